#include "tfe/pdesim.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfe/centre.hpp"

namespace tfe {

namespace {

// face flux G = (|v|^n + eps) v_yyy - beta y v at face j (cells j-1 | j);
// zero-extension ghosts realize the compact support / zero-flux closure
double face_flux(const SimState& s, const std::vector<double>& v, int j) {
  const int M = int(v.size());
  if (j <= 0 || j >= M) return 0.0;
  auto at = [&](int i) { return (i < 0 || i >= M) ? 0.0 : v[i]; };
  const double n = s.params.n;
  // harmonic mobility average: degenerates when either side is dry, so the
  // contact line does not leak (an arithmetic mean spreads the support and
  // rings negative beyond it)
  const double ma = std::pow(std::abs(at(j - 1)), n);
  const double mb = std::pow(std::abs(at(j)), n);
  const double mob = (ma + mb > 0 ? 2.0 * ma * mb / (ma + mb) : 0.0) + s.eps;
  const double third =
      (at(j + 1) - 3.0 * at(j) + 3.0 * at(j - 1) - at(j - 2)) /
      (s.h * s.h * s.h);
  const double yf = -s.L + j * s.h;
  const double adv = s.params.beta() * yf * 0.5 * (at(j - 1) + at(j));
  return mob * third - adv;
}

void rhs(const SimState& s, const std::vector<double>& v, double tau,
         std::vector<double>& out) {
  const int M = int(v.size());
  out.resize(M);
  const double gamma = absorption_decay_rate(s.params);
  const double coef = s.absorption ? std::exp(-gamma * tau) : 0.0;
  double flux_left = face_flux(s, v, 0);
  for (int i = 0; i < M; ++i) {
    const double flux_right = face_flux(s, v, i + 1);
    out[i] = -(flux_right - flux_left) / s.h;
    out[i] -= coef * std::pow(std::abs(v[i]), s.params.p - 1.0) * v[i];
    flux_left = flux_right;
  }
}

double absorbed_quadrature(const SimState& s) {
  if (!s.absorption) return 0.0;
  const double coef = std::exp(-absorption_decay_rate(s.params) * s.tau);
  double total = 0;
  for (double x : s.v)
    total += coef * std::pow(std::abs(x), s.params.p - 1.0) * x;
  return total * s.h;
}

// one BDF1 solve at fixed dtau; returns false on Newton failure
bool bdf1_solve(SimState& s, double dtau) {
  const int M = int(s.v.size());
  const double tau_new = s.tau + dtau;
  std::vector<double> w = s.v, f0(M), fp(M);
  Eigen::VectorXd F(M);

  auto residual = [&](const std::vector<double>& x, Eigen::VectorXd& out) {
    rhs(s, x, tau_new, f0);
    for (int i = 0; i < M; ++i) out[i] = x[i] - s.v[i] - dtau * f0[i];
  };

  const int kBand = 2, kColors = 2 * kBand + 1;
  Eigen::SparseMatrix<double> J(M, M);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  std::vector<double> base(M);

  for (int iter = 0; iter < 12; ++iter) {
    residual(w, F);
    double scale = 1.0;
    for (double x : w) scale = std::max(scale, std::abs(x));
    if (F.lpNorm<Eigen::Infinity>() < s.newton_tol * scale) {
      s.v = std::move(w);
      s.tau = tau_new;
      return true;
    }
    // banded Jacobian by directional differences, one evaluation per color
    rhs(s, w, tau_new, base);
    trip.clear();
    std::vector<double> wp(M), delta(M);
    for (int c = 0; c < kColors; ++c) {
      wp = w;
      for (int j = c; j < M; j += kColors) {
        delta[j] = 1e-7 * (1.0 + std::abs(w[j]));
        wp[j] += delta[j];
      }
      rhs(s, wp, tau_new, fp);
      for (int j = c; j < M; j += kColors)
        for (int i = std::max(0, j - kBand); i <= std::min(M - 1, j + kBand);
             ++i) {
          const double d = (fp[i] - base[i]) / delta[j];
          trip.emplace_back(i, j, (i == j ? 1.0 : 0.0) - dtau * d);
        }
    }
    J.setFromTriplets(trip.begin(), trip.end());
    lu.compute(J);
    if (lu.info() != Eigen::Success) return false;
    Eigen::VectorXd dw = lu.solve(-F);
    if (lu.info() != Eigen::Success) return false;
    for (int i = 0; i < M; ++i) w[i] += dw[i];
  }
  return false;
}

double sample_steady(double a, double y) {
  const double w = a * a - y * y;
  return w > 0 ? w * w / 120.0 : 0.0;
}

void fill_fitted_exponents(SimTrace& tr) {
  for (size_t k = 0; k < tr.rows.size(); ++k) {
    const double tau = tr.rows[k].tau;
    if (tau < 1.0) continue;
    // regression of ln b on ln tau over the trailing half-decade-ish window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t j = 0; j <= k; ++j) {
      if (tr.rows[j].tau < 0.5 * tau || tr.rows[j].b_amp <= 0) continue;
      const double x = std::log(tr.rows[j].tau), y = std::log(tr.rows[j].b_amp);
      sx += x; sy += y; sxx += x * x; sxy += x * y; ++cnt;
    }
    if (cnt >= 3 && sxx * cnt - sx * sx > 1e-12)
      tr.rows[k].fitted_exponent = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  }
}

void enlarge_if_needed(SimState& s) {
  const int M = int(s.v.size());
  const double amp = s.amplitude();
  double edge = 0;
  for (int i = 0; i < 5; ++i)
    edge = std::max({edge, std::abs(s.v[i]), std::abs(s.v[M - 1 - i])});
  // threshold sits above the mobility-regularization leakage (~eps level)
  // so ripples do not trigger runaway regridding
  if (edge <= 1e-6 * std::max(amp, 1e-30)) return;
  const int pad = (M / 8 + 1) & ~1;  // keep even symmetry of the grid
  std::vector<double> nv(M + 2 * pad, 0.0);
  std::copy(s.v.begin(), s.v.end(), nv.begin() + pad);
  s.v = std::move(nv);
  s.L += pad * s.h;
}

SimTrace run_experiment(SimState s, double tau_max, double dtau,
                        bool critical) {
  SimTrace tr;
  const double rec = 0.1;
  double next_rec = 0.0;
  auto record = [&] {
    SimTraceRow row;
    row.tau = s.tau;
    row.b_amp = s.amplitude();
    row.b_supp = s.support_radius();
    row.mass = s.mass();
    row.lyapunov = lyapunov_monitor(s);
    tr.rows.push_back(row);
    if (!critical) {
      const double a = std::pow(112.5 * row.mass, 0.2);
      double d = 0;
      for (size_t i = 0; i < s.v.size(); ++i)
        d = std::max(d, std::abs(s.v[i] - sample_steady(a, s.cell(int(i)))));
      tr.profile_distance.push_back(d);
    }
  };
  record();
  next_rec = rec;
  while (s.tau < tau_max - 1e-9) {  // no closing micro-step
    enlarge_if_needed(s);
    step_rescaled_tfe(s, std::min(dtau, tau_max - s.tau));
    tr.max_mass_residual = std::max(tr.max_mass_residual, s.last_mass_residual);
    if (s.tau >= next_rec - 1e-12) {
      record();
      next_rec += rec;
    }
  }
  fill_fitted_exponents(tr);
  if (critical) {
    // collapse of v/b against zeta = y b^(-1/4) onto the unit-amplitude
    // steady shape (1 - (zeta/120^(1/4))^2)^2
    const double b = s.amplitude();
    const double az = std::pow(120.0, 0.25);
    double d = 0;
    for (size_t i = 0; i < s.v.size(); ++i) {
      const double zeta = s.cell(int(i)) * std::pow(b, -0.25);
      const double w = 1.0 - (zeta / az) * (zeta / az);
      const double shape = w > 0 ? w * w : 0.0;
      d = std::max(d, std::abs(s.v[i] / b - shape));
    }
    tr.final_shape_distance = d;
  }
  tr.final_state = std::move(s);
  return tr;
}

}  // namespace

double SimState::mass() const {
  double m = 0;
  for (double x : v) m += x;
  return m * h;
}

double SimState::amplitude() const {
  double a = 0;
  for (double x : v) a = std::max(a, std::abs(x));
  return a;
}

double SimState::support_radius() const {
  const double floor = 1e-6 * std::max(amplitude(), 1e-30);
  for (int i = int(v.size()) - 1; i >= 0; --i)
    if (std::abs(v[i]) > floor) return std::abs(cell(i)) + 0.5 * h;
  return 0.0;
}

double absorption_decay_rate(const ProblemParams& params) {
  return params.N * (params.p - params.p_critical()) * params.beta();
}

SimState make_sim_state(const ProblemParams& params, double amplitude,
                        double radius, int cells) {
  params.validate();
  if (!(amplitude > 0) || !(radius > 0) || cells < 16)
    throw std::invalid_argument("bad simulation data");
  SimState s;
  s.params = params;
  s.L = 3.0 * radius;
  s.h = 2.0 * s.L / cells;
  s.v.resize(cells);
  for (int i = 0; i < cells; ++i) {
    const double r = s.cell(i) / radius;
    const double w = 1.0 - r * r;
    s.v[i] = w > 0 ? amplitude * w * w : 0.0;
  }
  s.eps = 1e-8 * std::pow(amplitude, params.n);
  return s;
}

void step_rescaled_tfe(SimState& state, double dtau) {
  if (!(dtau > 0)) throw std::invalid_argument("dtau > 0 required");
  const double mass_before = state.mass();
  double piece = dtau;
  int halvings = 0;
  double remaining = dtau;
  double absorbed = 0;  // accumulated over pieces, each at its own level
  while (remaining > 1e-15) {
    const double take = std::min(piece, remaining);
    SimState attempt = state;
    if (bdf1_solve(attempt, take)) {
      remaining -= take;
      state = std::move(attempt);
      absorbed += take * absorbed_quadrature(state);
    } else {
      if (++halvings > 10)
        throw std::runtime_error("implicit step failed after 10 halvings");
      piece *= 0.5;
    }
  }
  // discrete mass identity: flux terms telescope, so the change must equal
  // the absorbed quadrature up to the Newton tolerance
  state.last_mass_residual =
      std::abs(state.mass() - mass_before + absorbed) / dtau;
}

double lyapunov_monitor(const SimState& state) {
  const int M = int(state.v.size());
  double grad = 0, weight = 0;
  for (int j = 1; j < M; ++j) {
    const double d = (state.v[j] - state.v[j - 1]) / state.h;
    grad += d * d * state.h;
  }
  for (int i = 0; i < M; ++i) {
    const double y = state.cell(i);
    weight += state.v[i] * y * y * state.h;
  }
  return -0.5 * grad - weight / (2.0 * (4.0 + state.params.N));
}

double final_decade_exponent(const SimTrace& trace) {
  if (trace.rows.empty()) throw std::invalid_argument("empty trace");
  const double tau_end = trace.rows.back().tau;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (const auto& r : trace.rows) {
    if (r.tau < tau_end / 10.0 || r.b_amp <= 0) continue;
    const double x = std::log(r.tau), y = std::log(r.b_amp);
    sx += x; sy += y; sxx += x * x; sxy += x * y; ++cnt;
  }
  if (cnt < 3) throw std::invalid_argument("trace too short for a decade fit");
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

SimTrace run_critical_experiment(double tau_max, int cells, double dtau) {
  ProblemParams params{1.0, 1, 2, 6.0};
  // start above the predicted universal amplitude curve so the slow
  // dynamics lock onto the decay law within the run
  CentreCoefficients c = centre_coefficients(1);
  // a modest overshoot converges from above with the shortest algebraic
  // transient (the slow ODE forgets larger offsets only like 1/tau)
  const double amp = 1.3 * c.gamma_star / 120.0;
  const double radius = std::pow(120.0 * amp, 0.25);
  SimState s = make_sim_state(params, amp, radius, cells);
  return run_experiment(std::move(s), tau_max, dtau, true);
}

SimTrace run_supercritical_experiment(double p, double tau_max, int cells,
                                      double dtau) {
  ProblemParams params{1.0, 1, 2, p};
  if (!(p > params.p_critical()))
    throw std::invalid_argument("supercritical run needs p > p0");
  const double amp = 1.0;
  const double radius = std::pow(120.0 * amp, 0.25);
  SimState s = make_sim_state(params, amp, radius, cells);
  return run_experiment(std::move(s), tau_max, dtau, false);
}

}  // namespace tfe
