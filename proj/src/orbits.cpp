#include "tfe/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tfe/patched_flow.hpp"
#include "tfe/singular_series.hpp"

namespace tfe {

OscCoeffs osc_coeffs(double n) {
  if (!(n > 0) || !(n < 3)) throw std::invalid_argument("n must be in (0,3)");
  const double mu = 3.0 / n;
  return {mu, 3 * (mu - 1), 3 * mu * mu - 6 * mu + 2, mu * (mu - 1) * (mu - 2)};
}

namespace {

SingularOdeDef osc_def(double n) {
  OscCoeffs c = osc_coeffs(n);
  return {n, c.a2, c.a1, c.a0, 1.0, 0.0};
}

}  // namespace

Rhs oscillatory_rhs(double n) { return osc_def(n).rhs(); }

double osc_equilibrium(double n) {
  OscCoeffs c = osc_coeffs(n);
  if (!(c.a0 < 0))
    throw std::invalid_argument("constant equilibria need n in (3/2, 3)");
  return std::pow(-1.0 / c.a0, 1.0 / n);
}

Vec osc_flow(double n, double s0, const Vec& y0, double s_end,
             std::vector<std::array<double, 3>>* upward_crossings,
             double tol) {
  std::vector<CrossingRecord> recs;
  PatchedFlowOptions opts;
  opts.tol = tol;
  Vec y = patched_flow(osc_def(n), s0, y0, s_end,
                       upward_crossings ? &recs : nullptr, opts);
  if (upward_crossings)
    for (const auto& r : recs)
      if (r.dphi > 0) upward_crossings->push_back({r.s, r.dphi, r.ddphi});
  return y;
}

std::optional<ArchResult> osc_arch(double n, double v, double A,
                                   double duration_cap) {
  if (!(v > 0)) return std::nullopt;
  const SingularOdeDef def = osc_def(n);
  // Launch step: small enough that the truncated crossing series stays
  // accurate even when the ODE coefficients are large (small n), where the
  // arch integrals would otherwise lose ~5 digits.
  double h0 = 0.01;
  if (A != 0) h0 = std::min(h0, 0.4 * v / std::abs(A));
  SingularSeries launch =
      crossing_series(n, def.a2, def.a1, def.a0, 1.0, 0.0, v, A);
  SingularSeries::Jet j0 = launch.eval(h0);
  if (!(j0.f > 0)) return std::nullopt;
  auto [l1, l2] = launch.integrals_d1sq_d2sq(h0);
  Vec y(5);
  y << j0.f, j0.df, j0.ddf, l1, l2;
  const double delta = 1e-3 * j0.f;
  const double escape = 1e3 * std::max(1.0, j0.f);
  IvpOptions opts;
  opts.tol = 1e-12;
  opts.abs_tol = 1e-12 * std::max(delta, 1e-4);
  opts.stop_at_first_event = true;
  std::vector<EventFn> evs{
      [delta](double, const Vec& yy) { return yy[0] - delta; },
      [escape](double, const Vec& yy) { return yy[0] - escape; }};
  Trajectory traj;
  try {
    traj = integrate_ivp(def.rhs(), y, h0, h0 + duration_cap, opts, evs);
  } catch (const IvpError&) {
    return std::nullopt;
  }
  if (traj.events.empty() || traj.events.front().id != 0) return std::nullopt;
  const Event& ev = traj.events.front();
  auto fit = fit_crossing(
      def, ev.t, {ev.state[0], ev.state[1], ev.state[2]});
  if (!fit) return std::nullopt;
  SingularSeries land = crossing_series(n, -def.a2, def.a1, -def.a0, -1.0,
                                        0.0, fit->v, fit->A);
  auto [m1, m2] = land.integrals_d1sq_d2sq(fit->dist);
  // reflect to the positive-slope frame of the next arch
  return ArchResult{fit->v, -fit->A, ev.t + fit->dist,
                    ev.state[3] + m1, ev.state[4] + m2};
}

namespace {

struct OrbitFix {
  double v, A, period, i1, i2, defect;
};

// Full return map (two arches) applied to section data (v, A).
struct MapResult {
  double v, A, period, i1, i2;
};

std::optional<MapResult> return_map(double n, double v, double A,
                                    double cap) {
  auto r1 = osc_arch(n, v, A, cap);
  if (!r1) return std::nullopt;
  auto r2 = osc_arch(n, r1->v1, r1->A1, cap);
  if (!r2) return std::nullopt;
  return MapResult{r2->v1, r2->A1, r1->duration + r2->duration,
                   r1->i1 + r2->i1, r1->i2 + r2->i2};
}

std::optional<OrbitFix> orbit_newton(double n, double v, double A,
                                     double cap = 200.0) {
  Eigen::Vector2d x(v, A);
  for (int it = 0; it < 60; ++it) {
    auto m = return_map(n, x[0], x[1], cap);
    if (!m) return std::nullopt;
    Eigen::Vector2d g(m->v - x[0], m->A - x[1]);
    const double xs = x.cwiseAbs().maxCoeff();
    if (g.cwiseAbs().maxCoeff() < 1e-11 * xs)
      return OrbitFix{x[0], x[1], m->period, m->i1, m->i2,
                      g.cwiseAbs().maxCoeff()};
    Eigen::Matrix2d J;
    bool ok = true;
    for (int j = 0; j < 2; ++j) {
      const double d = 1e-6 * std::max(std::abs(x[j]), 1e-3 * xs);
      Eigen::Vector2d xp = x, xm = x;
      xp[j] += d;
      xm[j] -= d;
      auto mp = return_map(n, xp[0], xp[1], cap);
      auto mm = return_map(n, xm[0], xm[1], cap);
      if (!mp || !mm) {
        ok = false;
        break;
      }
      J.col(j) = Eigen::Vector2d((mp->v - xp[0]) - (mm->v - xm[0]),
                                 (mp->A - xp[1]) - (mm->A - xm[1])) /
                 (2 * d);
    }
    if (!ok) return std::nullopt;
    Eigen::Vector2d step = J.fullPivLu().solve(-g);
    if (!step.allFinite()) return std::nullopt;
    const double cap_step = 0.25 * std::max(xs, 1e-3 * xs);
    const double sn = step.cwiseAbs().maxCoeff();
    if (sn > cap_step) step *= cap_step / sn;
    x += step;
    if (!(x[0] > 0)) return std::nullopt;
  }
  return std::nullopt;
}

// Cubic Hermite resampling of recorded flow points onto a uniform grid.
std::vector<std::array<double, 4>> resample(
    const std::vector<std::array<double, 4>>& pts, double period,
    int n_samples) {
  std::vector<std::array<double, 4>> out;
  out.reserve(n_samples);
  size_t i = 0;
  for (int k = 0; k < n_samples; ++k) {
    const double s = period * k / n_samples;
    while (i + 2 < pts.size() && pts[i + 1][0] <= s) ++i;
    const auto& a = pts[i];
    const auto& b = pts[i + 1];
    const double h = b[0] - a[0];
    const double t = std::clamp((s - a[0]) / h, 0.0, 1.0);
    auto hermite = [&](double fa, double da, double fb, double db) {
      const double t2 = t * t, t3 = t2 * t;
      return fa * (2 * t3 - 3 * t2 + 1) + da * h * (t3 - 2 * t2 + t) +
             fb * (-2 * t3 + 3 * t2) + db * h * (t3 - t2);
    };
    const double phi = hermite(a[1], a[2], b[1], b[2]);
    const double dphi = hermite(a[2], a[3], b[2], b[3]);
    const double ddphi = a[3] + (b[3] - a[3]) * t;
    out.push_back({s, phi, dphi, ddphi});
  }
  return out;
}

}  // namespace

PeriodicOrbit find_periodic_orbit(double n, const Vec& initial_state,
                                  double transient, int n_samples) {
  const OscCoeffs c = osc_coeffs(n);
  double v0, A0;
  if (std::abs(initial_state[0]) < 1e-300 && initial_state[1] > 0) {
    v0 = initial_state[1];
    A0 = initial_state[2];
  } else {
    std::vector<std::array<double, 3>> ups;
    osc_flow(n, 0.0, initial_state, transient, &ups);
    if (ups.empty())
      throw std::runtime_error("no upward crossing during transient");
    v0 = ups.back()[1];
    A0 = ups.back()[2];
  }
  auto fix = orbit_newton(n, v0, A0);
  if (!fix) throw std::runtime_error("orbit refinement failed to converge");

  PeriodicOrbit orb;
  orb.n = n;
  orb.mu = c.mu;
  orb.period = fix->period;
  orb.v = fix->v;
  orb.A = fix->A;
  orb.closure_defect = fix->defect;
  orb.int_dphi_sq = fix->i1;
  orb.int_d2phi_sq = fix->i2;

  std::vector<std::array<double, 4>> pts;
  PatchedFlowOptions opts;
  opts.max_step = 0.05;
  opts.recorder = [&](double s, const Vec& y) {
    pts.push_back({s, y[0], y[1], y[2]});
  };
  Vec y0(3);
  y0 << 0.0, fix->v, fix->A;
  patched_flow(osc_def(n), 0.0, y0, fix->period, nullptr, opts);
  orb.samples = resample(pts, fix->period, n_samples);
  orb.floquet_moduli = floquet_multipliers(orb);
  return orb;
}

std::vector<double> floquet_multipliers(const PeriodicOrbit& orbit) {
  const SingularOdeDef def = osc_def(orbit.n);
  Vec y0(3);
  y0 << 0.0, orbit.v, orbit.A;
  const double h0 = std::min(0.05, 0.4 * orbit.v /
                                       std::max(std::abs(orbit.A), 1e-30));
  const Vec base = patched_flow(def, 0.0, y0, h0);
  Eigen::Matrix3d M;
  const double scale = base.cwiseAbs().maxCoeff();
  for (int j = 0; j < 3; ++j) {
    const double d = 1e-5 * std::max(std::abs(base[j]), 1e-2 * scale);
    Vec yp = base, ym = base;
    yp[j] += d;
    ym[j] -= d;
    Vec fp = patched_flow(def, h0, yp, h0 + orbit.period);
    Vec fm = patched_flow(def, h0, ym, h0 + orbit.period);
    M.col(j) = (fp - fm) / (2 * d);
  }
  Eigen::EigenSolver<Eigen::Matrix3d> es(M);
  std::vector<double> mods(3);
  for (int i = 0; i < 3; ++i) mods[i] = std::abs(es.eigenvalues()[i]);
  std::sort(mods.rbegin(), mods.rend());
  return mods;
}

double exact_theta_n1() {
  return solve_bracketed(
      [](double t) { return ((t - 2) * t - 2) * t + 1; }, 0.2, 0.6, 1e-15);
}

PeriodicOrbit exact_orbit_n1(int n_samples) {
  // For n=1 the positive arch solves phi''' + 6 phi'' + 11 phi' + 6 phi = -1:
  // phi = -1/6 + a e^-s + b e^-2s + c e^-3s on [0, L], continued oddly.
  const double E = exact_theta_n1();
  const double L = -std::log(E);
  const double cA = 3 * (1 + E * E * E) / (1 + E);
  const double cB = -3 * (1 + E * E * E) / (1 + E * E);
  const double cC = 1.0;
  const double g = (1.0 / 6.0) / (cA + cB + cC);
  const double a = g * cA, b = g * cB, cc = g * cC;
  if (std::abs(-1.0 / 6.0 + a * E + b * E * E + cc * E * E * E) > 1e-12)
    throw std::logic_error("closed-form arch does not close");

  auto phi_jet = [&](double s) -> std::array<double, 3> {
    double sgn = 1.0;
    if (s >= L) {
      s -= L;
      sgn = -1.0;
    }
    const double e1 = std::exp(-s), e2 = e1 * e1, e3 = e2 * e1;
    return {sgn * (-1.0 / 6.0 + a * e1 + b * e2 + cc * e3),
            sgn * (-(a * e1 + 2 * b * e2 + 3 * cc * e3)),
            sgn * (a * e1 + 4 * b * e2 + 9 * cc * e3)};
  };

  PeriodicOrbit orb;
  orb.n = 1;
  orb.mu = 3;
  orb.period = 2 * L;
  orb.v = -(a + 2 * b + 3 * cc);
  orb.A = a + 4 * b + 9 * cc;
  orb.closure_defect = std::abs(phi_jet(0.0)[0]);
  const double ks[3] = {1, 2, 3};
  const double cs[3] = {a, b, cc};
  double i1 = 0, i2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double kk = ks[i] + ks[j];
      const double base = cs[i] * cs[j] * (1 - std::pow(E, kk)) / kk;
      i1 += ks[i] * ks[j] * base;
      i2 += ks[i] * ks[i] * ks[j] * ks[j] * base;
    }
  orb.int_dphi_sq = 2 * i1;
  orb.int_d2phi_sq = 2 * i2;
  orb.samples.reserve(n_samples);
  for (int k = 0; k < n_samples; ++k) {
    const double s = orb.period * k / n_samples;
    auto j = phi_jet(s);
    orb.samples.push_back({s, j[0], j[1], j[2]});
  }
  return orb;
}

BifurcationTrace trace_heteroclinic_bifurcation(double n_lo, double n_hi,
                                                double period_cap) {
  BifurcationTrace tr;
  tr.period_cap = period_cap;

  // seed orbit at n_lo from the flow attractor
  Vec y0(3);
  y0 << 0.5 * osc_equilibrium(n_lo), 0.0, 0.0;
  PeriodicOrbit seed = find_periodic_orbit(n_lo, y0);
  double v = seed.v, A = seed.A, n = n_lo, T = seed.period;
  tr.n_values.push_back(n);
  tr.periods.push_back(T);

  double dn = std::min(0.01, (n_hi - n_lo) / 4);
  double last_fail = n_hi;
  const double arch_cap = 4 * period_cap;
  while (dn >= 2.5e-5) {
    double n_try = std::min(n + dn, n_hi);
    auto fix = orbit_newton(n_try, v, A, arch_cap);
    if (fix && fix->period <= period_cap) {
      n = n_try;
      v = fix->v;
      A = fix->A;
      T = fix->period;
      tr.n_values.push_back(n);
      tr.periods.push_back(T);
      if (n >= n_hi) break;
      if (fix->period > 0.6 * period_cap) dn *= 0.5;
    } else {
      last_fail = std::min(last_fail, n_try);
      dn *= 0.5;
    }
  }
  tr.n_h_lo = n;
  tr.n_h_hi = std::min(last_fail, n + 1e-4);

  // fit T = -C log(n* - n) + D through the last three points to place the
  // period blow-up
  tr.n_h_estimate = tr.n_h_hi;
  const size_t m = tr.n_values.size();
  if (m >= 3) {
    const double n1 = tr.n_values[m - 3], n2 = tr.n_values[m - 2],
                 n3 = tr.n_values[m - 1];
    const double T1 = tr.periods[m - 3], T2 = tr.periods[m - 2],
                 T3 = tr.periods[m - 1];
    auto mism = [&](double ns) {
      return (T3 - T2) * std::log((ns - n1) / (ns - n2)) -
             (T2 - T1) * std::log((ns - n2) / (ns - n3));
    };
    double lo = n3 + 1e-12, hi = n3 + 0.05;
    if (mism(lo) * mism(hi) < 0)
      tr.n_h_estimate = solve_bracketed(mism, lo, hi, 1e-13);
  }
  return tr;
}

}  // namespace tfe
