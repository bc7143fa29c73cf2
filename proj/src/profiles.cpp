#include "tfe/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "tfe/ode.hpp"
#include "tfe/orbits.hpp"
#include "tfe/patched_flow.hpp"
#include "tfe/singular_series.hpp"

namespace tfe {

namespace {

// ---- small polynomial helpers in x = r^2 ------------------------------

using Poly = std::vector<double>;  // coefficients of x^j

Poly poly_dx(const Poly& p) {
  Poly d(std::max<size_t>(p.size(), 1) - 1, 0.0);
  for (size_t j = 1; j < p.size(); ++j) d[j - 1] = j * p[j];
  return d;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly poly_add(Poly a, const Poly& b, double w = 1.0) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (size_t j = 0; j < b.size(); ++j) a[j] += w * b[j];
  return a;
}

double poly_eval(const Poly& p, double x) {
  double v = 0;
  for (size_t j = p.size(); j-- > 0;) v = v * x + p[j];
  return v;
}

// radial Laplacian of sum c_j r^(2j)
Poly poly_lap(const Poly& p, int N) {
  Poly out(std::max<size_t>(p.size(), 1) - 1, 0.0);
  for (size_t j = 1; j < p.size(); ++j)
    out[j - 1] = p[j] * radial_lap_factor(2 * int(j), N);
  return out;
}

// coefficients of c0 (a^2 - x)^m
Poly explicit_poly(int m, double a, double c0) {
  Poly p{1.0};
  for (int i = 0; i < m; ++i) p = poly_mul(p, Poly{a * a, -1.0});
  for (double& c : p) c *= c0;
  return p;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0;
  for (size_t i = 1; i < x.size(); ++i)
    s += 0.5 * (f[i] + f[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

}  // namespace

double explicit_residual_sup(int m, int N, double a, double c0) {
  const ProblemParams params{1.0, N, m, 1.0 + 1.0 + 2.0 * m / N};
  const double beta = params.beta();
  Poly F = explicit_poly(m, a, c0);
  Poly G = F;
  for (int i = 0; i < m - 1; ++i) G = poly_lap(G, N);
  // grad G = y * D(x) with D_j = 2 (j+1) G_(j+1)
  Poly D(std::max<size_t>(G.size(), 1) - 1, 0.0);
  for (size_t j = 1; j < G.size(); ++j) D[j - 1] = 2.0 * j * G[j];
  Poly P = poly_mul(F, D);  // n = 1 mobility
  // div(y P(x)) = N P + 2 x P'
  Poly div = poly_add(Poly(P.size(), 0.0), P, double(N));
  Poly xdp = poly_mul(Poly{0.0, 2.0}, poly_dx(P));
  div = poly_add(div, xdp);
  const double sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^(m+1)
  Poly res = poly_add(Poly(div.size(), 0.0), div, sign);
  res = poly_add(res, poly_mul(Poly{0.0, 2.0 * beta}, poly_dx(F)));  // bF'.y
  res = poly_add(res, F, beta * N);
  double sup = 0;
  for (int i = 0; i <= 400; ++i) {
    const double r = a * i / 400.0;
    sup = std::max(sup, std::abs(poly_eval(res, r * r)));
  }
  return sup;
}

double c0_double_factorial_form(int m, int N) {
  auto dfac = [](int k) {
    double v = 1;
    for (; k > 1; k -= 2) v *= k;
    return v;
  };
  return 0.5 * dfac(N) / (dfac(2 * m) * dfac(2 * m + N));
}

namespace {

Profile explicit_polynomial_profile(int m, int N, double a, double c0) {
  Profile pr;
  pr.params = ProblemParams{1.0, N, m, 1.0 + 1.0 + 2.0 * m / N};
  pr.kind = ProblemKind::FBP;
  pr.interface_a = a;
  Poly P = explicit_poly(m, a, c0);
  Poly P1 = poly_dx(P), P2 = poly_dx(P1), P3 = poly_dx(P2);
  const int M = 800;
  for (int i = 0; i <= M; ++i) {
    const double r = a * i / M, x = r * r;
    pr.grid.push_back(r);
    pr.values.push_back(poly_eval(P, x));
    pr.d1.push_back(2 * r * poly_eval(P1, x));
    pr.d2.push_back(2 * poly_eval(P1, x) + 4 * x * poly_eval(P2, x));
    pr.d3.push_back(12 * r * poly_eval(P2, x) + 8 * x * r * poly_eval(P3, x));
  }
  const double F0 = c0 * std::pow(a, 2 * m);
  pr.second_deriv_origin = pr.d2[0] / std::sqrt(F0);
  pr.mass = c0 * N * unit_ball_volume(N) * std::pow(a, 2 * m + N) * 0.5 *
            std::beta(N / 2.0, m + 1.0);
  pr.zero_count = 0;
  return pr;
}

}  // namespace

Profile explicit_profile_n1(int N, double a) {
  const double c0 = 1.0 / (8.0 * (N + 2) * (N + 4));
  return explicit_polynomial_profile(2, N, a, c0);
}

Profile explicit_profile_2m_n1(int m, int N) {
  ProblemParams params{1.0, N, m, 1.0 + 1.0 + 2.0 * m / N};
  return explicit_polynomial_profile(m, N, 1.0, params.c0());
}

// ---- FBP shooting, n in (0, 3/2): interface series launch -------------

namespace {

struct FbpRun {
  double score;  // >0: F vanished early at distance x from interface;
                 // <=0: reached the origin, value is F'(0) in y
  std::optional<Trajectory> traj;
};

FbpRun fbp_shot(double n, double beta, double A, bool keep,
                double h0 = 0.02) {
  SingularSeries ser = interface_series(n, beta, 1.0, A);
  SingularSeries::Jet j = ser.eval(h0);
  FbpRun run;
  if (!(j.f > 0) || !std::isfinite(j.f) || !std::isfinite(j.df) ||
      !std::isfinite(j.ddf)) {
    run.score = h0;  // the series itself is dead: A too small
    return run;
  }
  Vec y0(3);
  y0 << j.f, j.df, j.ddf;
  const double delta = 1e-9 * A * h0 * h0;
  Rhs rhs = [n, beta](double x, const Vec& y) {
    Vec d(3);
    d[0] = y[1];
    d[1] = y[2];
    d[2] = -beta * std::pow(std::max(y[0], 1e-300), 1.0 - n) * (1.0 - x);
    return d;
  };
  IvpOptions opts;
  opts.tol = 1e-12;
  opts.abs_tol = 1e-16;
  opts.max_step = keep ? 0.005 : 1e100;
  opts.stop_at_first_event = true;
  std::vector<EventFn> evs{
      [delta](double, const Vec& y) { return y[0] - delta; }};
  Trajectory traj;
  try {
    traj = integrate_ivp(rhs, y0, h0, 1.0, opts, evs);
  } catch (const IvpError&) {
    run.score = h0;  // stiff collapse before the origin: treat as early death
    return run;
  }
  if (!traj.events.empty()) {
    run.score = traj.events.front().t;  // F died early: A too small
  } else {
    // dF/dy at the origin = -dF/dx at x=1: zero at the solution,
    // negative when A is too large; continuous across the root
    run.score = -traj.y_end()[1];
    if (keep) run.traj = std::move(traj);
  }
  return run;
}

Profile assemble_fbp_series_profile(const ProblemParams& params, double A,
                                    double h0) {
  const double n = params.n, beta = params.beta();
  FbpRun run = fbp_shot(n, beta, A, true, h0);
  if (!run.traj) throw std::runtime_error("fbp profile left the bracket");
  SingularSeries ser = interface_series(n, beta, 1.0, A);
  // collect (x, F, F', F'', F''') with x the distance from the interface
  std::vector<std::array<double, 5>> pts;
  pts.push_back({0, 0, 0, 0, 0});
  for (double x = 1e-7; x < h0 * 0.999; x *= 1.45) {
    SingularSeries::Jet j = ser.eval(x);
    pts.push_back(
        {x, j.f, j.df, j.ddf,
         -beta * std::pow(j.f, 1.0 - n) * (1.0 - x)});
  }
  const Trajectory& tr = *run.traj;
  for (size_t i = 0; i < tr.times.size(); ++i) {
    const Vec& y = tr.states[i];
    pts.push_back({tr.times[i], y[0], y[1], y[2],
                   -beta * std::pow(y[0], 1.0 - n) * (1.0 - tr.times[i])});
  }
  // map to y = 1 - x and rescale so F(0) = 1 using the scaling family
  const double F0 = tr.y_end()[0];
  const double a = std::pow(F0, -n / 4.0);
  const double vs = std::pow(a, 4.0 / n);
  Profile pr;
  pr.params = params;
  pr.kind = ProblemKind::FBP;
  pr.interface_a = a;
  pr.zero_count = 0;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    const auto& q = *it;
    pr.grid.push_back(a * (1.0 - q[0]));
    pr.values.push_back(vs * q[1]);
    pr.d1.push_back(-vs / a * q[2]);
    pr.d2.push_back(vs / (a * a) * q[3]);
    pr.d3.push_back(-vs / (a * a * a) * q[4]);
  }
  pr.second_deriv_origin = tr.y_end()[2] * std::pow(F0, 0.5 * n - 1.0);
  pr.mass = 2.0 * trapezoid(pr.grid, pr.values);
  return pr;
}

Profile shoot_fbp_series(const ProblemParams& params) {
  const double n = params.n, beta = params.beta();
  const double h0 = 0.02;
  auto score = [&](double A) { return fbp_shot(n, beta, A, false, h0).score; };
  // geometric bracket scan: early death (score > 0) for small A, overshoot
  // (score < 0) for large A.  Skip leading negatives: far below the bracket
  // the launch series degenerates and the score sign is meaningless.
  double lo = 0, hi = 0, slo = 0;
  double prev = 0, prevA = 0;
  bool seen_pos = false;
  for (double A = 1e-16; A < 1e6; A *= 1.7) {
    const double sc = score(A);
    if (seen_pos && prev > 0 && sc <= 0) {
      lo = prevA;
      hi = A;
      slo = prev;
      break;
    }
    if (sc > 0) seen_pos = true;
    prev = sc;
    prevA = A;
  }
  if (hi == 0) throw std::runtime_error("no amplitude bracket found");
  for (int it = 0; it < 90 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double sc = score(mid);
    if (sc * slo > 0)
      lo = mid;
    else
      hi = mid;
  }
  return assemble_fbp_series_profile(params, std::sqrt(lo * hi), h0);
}

// ---- FBP shooting, n in [3/2, 3): logarithmic interface variable ------

// phi''' + a2 phi'' + a1 phi' + a0 phi + (1 - e^s) phi^(1-n) = 0,
// s = ln(1 - y); the interface is s -> -infinity.
Rhs log_variable_rhs(double n) {
  const OscCoeffs c = osc_coeffs(n);
  return [c, n](double s, const Vec& y) {
    Vec d(3);
    d[0] = y[1];
    d[1] = y[2];
    d[2] = -c.a2 * y[2] - c.a1 * y[1] - c.a0 * y[0] -
           (1.0 - std::exp(s)) * std::pow(y[0], 1.0 - n);
    return d;
  };
}

struct LogShot {
  bool valid;
  double g;  // origin symmetry mismatch mu phi(0) + phi'(0)
  std::optional<Trajectory> traj;
};

LogShot log_shot(double n, double s0, const Vec& y0, bool keep) {
  const double mu = 3.0 / n;
  IvpOptions opts;
  opts.tol = 1e-12;
  opts.abs_tol = 1e-14;
  opts.stop_at_first_event = true;
  if (keep) opts.max_step = 0.05;
  const double floor = 1e-4 * y0[0], ceil = 1e3 * std::max(1.0, y0[0]);
  std::vector<EventFn> evs{
      [floor](double, const Vec& y) { return y[0] - floor; },
      [ceil](double, const Vec& y) { return y[0] - ceil; }};
  Trajectory traj;
  try {
    traj = integrate_ivp(log_variable_rhs(n), y0, s0, 0.0, opts, evs);
  } catch (const IvpError&) {
    return {false, 0, std::nullopt};
  }
  if (!traj.events.empty()) {
    const Event& ev = traj.events.front();
    if (ev.id == 1) return {false, 0, std::nullopt};  // blew up: off-branch
    // died before the origin: the mismatch side opposite to overshoot;
    // report the (negative) death location so bisection can still order it
    return {true, ev.t - 1e-9, std::nullopt};
  }
  LogShot out{true, mu * traj.y_end()[0] + traj.y_end()[1], std::nullopt};
  if (keep) out.traj = std::move(traj);
  return out;
}

Profile assemble_fbp_log_profile(const ProblemParams& params, double s0,
                                 const Trajectory& tr) {
  const double n = params.n, beta = params.beta(), mu = 3.0 / n;
  const OscCoeffs c = osc_coeffs(n);
  const double bn = std::pow(beta, 1.0 / n);
  const double F0 = bn * tr.y_end()[0];
  const double a = std::pow(F0, -n / 4.0);
  const double vs = std::pow(a, 4.0 / n);
  Profile pr;
  pr.params = params;
  pr.kind = ProblemKind::FBP;
  pr.interface_a = a;
  pr.zero_count = 0;
  // walk the trajectory from s = 0 back toward the interface so that
  // y = a (1 - e^s) increases; drop points once 1 - e^s saturates
  for (size_t i = tr.times.size(); i-- > 0;) {
    const double s = tr.times[i];
    const Vec& y = tr.states[i];
    const double e = std::exp(s);
    const double yy = a * (1.0 - e);
    if (!pr.grid.empty() && yy <= pr.grid.back()) continue;
    const double q1 = mu * y[0] + y[1];
    const double q2 = (mu - 1) * q1 + mu * y[1] + y[2];
    const double q3 = (1.0 - e) * std::pow(y[0], 1.0 - n);
    pr.grid.push_back(yy);
    pr.values.push_back(vs * bn * std::pow(e, mu) * y[0]);
    pr.d1.push_back(-vs / a * bn * std::pow(e, mu - 1) * q1);
    pr.d2.push_back(vs / (a * a) * bn * std::pow(e, mu - 2) * q2);
    pr.d3.push_back(vs / (a * a * a) * bn * std::pow(e, mu - 3) * q3);
  }
  const double d2_origin = bn * ((mu - 1) * (mu * tr.y_end()[0] +
                                             tr.y_end()[1]) +
                                 mu * tr.y_end()[1] + tr.y_end()[2]);
  pr.second_deriv_origin = d2_origin * std::pow(F0, 0.5 * n - 1.0);
  pr.mass = 2.0 * trapezoid(pr.grid, pr.values);
  (void)c;
  (void)s0;
  return pr;
}

Profile shoot_fbp_log(const ProblemParams& params) {
  const double n = params.n;
  // launch parameter -> state at s0 (empty optional: launch invalid)
  std::function<std::optional<Vec>(double)> launch_state;
  double s0, plo, phi_hi;
  if (std::abs(n - 1.5) < 1e-12) {
    // log-corrected interface: phi ~ ((3/4)(|s| + sigma))^(2/3)
    s0 = -60.0;
    launch_state = [s0](double sigma) -> std::optional<Vec> {
      const double u = -s0 + sigma;
      if (u <= 1.0) return std::nullopt;
      Vec y(3);
      y << std::pow(0.75 * u, 2.0 / 3.0),
          -0.5 * std::pow(0.75 * u, -1.0 / 3.0),
          -0.125 * std::pow(0.75 * u, -4.0 / 3.0);
      return y;
    };
    plo = -50.0;
    phi_hi = 400.0;
  } else {
    // launch along the 1D unstable manifold of the positive constant
    // state, parametrized by travel time along the (autonomous) manifold
    // orbit; negative parameter selects the opposite branch
    s0 = -15.0;
    const OscCoeffs c = osc_coeffs(n);
    const double eq = osc_equilibrium(n);
    const double b0 = c.a0 + (1.0 - n) * std::abs(c.a0);
    const double lam = solve_bracketed(
        [&](double l) { return ((l + c.a2) * l + c.a1) * l + b0; }, 1e-9,
        20.0, 1e-14);
    const Rhs auto_rhs = oscillatory_rhs(n);
    launch_state = [=](double t) -> std::optional<Vec> {
      const double dir = t >= 0 ? 1.0 : -1.0;
      const double eps = 1e-9 * eq * dir;
      Vec y(3);
      y << eq + eps, eps * lam, eps * lam * lam;
      const double theta = std::abs(t);
      if (theta < 1e-12) return y;
      IvpOptions opts;
      opts.tol = 1e-12;
      opts.abs_tol = 1e-14;
      opts.stop_at_first_event = true;
      const double floor = 1e-3 * eq, ceil = 1e3 * eq;
      std::vector<EventFn> evs{
          [floor](double, const Vec& yy) { return yy[0] - floor; },
          [ceil](double, const Vec& yy) { return yy[0] - ceil; }};
      try {
        Trajectory tr = integrate_ivp(auto_rhs, y, 0.0, theta, opts, evs);
        if (!tr.events.empty()) return std::nullopt;
        return tr.y_end();
      } catch (const IvpError&) {
        return std::nullopt;
      }
    };
    plo = -(std::log(1e9) / lam + 60.0);
    phi_hi = -plo;
  }
  // scan for a sign change of the origin mismatch among valid launches
  auto eval = [&](double p, bool keep) -> LogShot {
    auto y0 = launch_state(p);
    if (!y0) return {false, 0, std::nullopt};
    return log_shot(n, s0, *y0, keep);
  };
  const int K = 500;
  double prev_p = 0, prev_g = 0;
  bool have_prev = false, found = false;
  double blo = 0, bhi = 0, glo = 0;
  for (int i = 0; i <= K; ++i) {
    const double p = plo + (phi_hi - plo) * i / K;
    LogShot sh = eval(p, false);
    if (!sh.valid) {
      have_prev = false;
      continue;
    }
    if (have_prev && prev_g * sh.g <= 0) {
      blo = prev_p;
      bhi = p;
      glo = prev_g;
      found = true;
      break;
    }
    prev_p = p;
    prev_g = sh.g;
    have_prev = true;
  }
  if (!found) throw std::runtime_error("no interface launch bracket found");
  for (int it = 0; it < 80 && bhi - blo > 1e-13 * std::max(1.0, std::abs(bhi));
       ++it) {
    const double mid = 0.5 * (blo + bhi);
    LogShot sh = eval(mid, false);
    if (!sh.valid) break;
    if (sh.g * glo > 0)
      blo = mid;
    else
      bhi = mid;
  }
  const double p = 0.5 * (blo + bhi);
  LogShot sh = eval(p, true);
  if (!sh.valid || !sh.traj)
    throw std::runtime_error("interface launch lost validity at the root");
  return assemble_fbp_log_profile(params, p, *sh.traj);
}

}  // namespace

Profile shoot_fbp_profile(const ProblemParams& params) {
  params.validate();
  if (params.m != 2 || params.N != 1)
    throw std::invalid_argument("shooting implemented for m=2, N=1");
  if (!(params.n > 0) || !(params.n < 3))
    throw std::invalid_argument("n must lie in (0, 3)");
  if (params.n < 1.5) return shoot_fbp_series(params);
  return shoot_fbp_log(params);
}

// ---- Cauchy-problem shooting -------------------------------------------

Profile shoot_cp_profile(double n) {
  if (n == 0.0) return fundamental_kernel().first;
  if (!(n > 0) || n >= kOscillatoryLimit)
    throw std::invalid_argument(
        "changing-sign shooting needs n in [0, oscillatory limit)");
  const double beta = 1.0 / (4.0 + n);
  const SingularOdeDef def{n, 0, 0, 0, 0.0, -beta};
  const double y_max = 35.0;
  PatchedFlowOptions opts;
  opts.tol = 1e-12;
  opts.escape = 100.0;
  auto classify = [&](double kappa) -> int {
    Vec y0(3);
    y0 << 1.0, 0.0, kappa;
    try {
      patched_flow(def, 0.0, y0, y_max, nullptr, opts);
      return 0;
    } catch (const PatchedFlowEscape& e) {
      return e.state[0] > 0 ? 1 : -1;
    } catch (const PatchedFlowError&) {
      return 0;  // patch failure: cannot resolve further at this kappa
    }
  };
  // bracket around the continuation guess from the n=0 kernel value
  const double guess = -0.338 - 0.045 * n;
  double lo = 0, hi = 0;
  int slo = 0;
  double prev_k = 0;
  int prev_c = 0;
  bool have = false, found = false;
  for (int i = 0; i <= 60; ++i) {
    const double k = guess - 0.15 + 0.3 * i / 60.0;
    const int c = classify(k);
    if (c == 0) {
      have = false;
      continue;
    }
    if (have && c * prev_c < 0) {
      lo = prev_k;
      hi = k;
      slo = prev_c;
      found = true;
      break;
    }
    prev_k = k;
    prev_c = c;
    have = true;
  }
  if (!found) throw std::runtime_error("no curvature bracket found");
  for (int it = 0; it < 70 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    const int c = classify(mid);
    if (c == 0) break;
    if (c == slo)
      lo = mid;
    else
      hi = mid;
  }
  const double kappa = 0.5 * (lo + hi);

  // final run with recording; truncate at the last resolved sign change
  std::vector<std::array<double, 4>> pts;
  std::vector<CrossingRecord> crossings;
  PatchedFlowOptions ropts = opts;
  ropts.max_step = 0.02;
  ropts.recorder = [&](double s, const Vec& y) {
    pts.push_back({s, y[0], y[1], y[2]});
  };
  Vec y0(3);
  y0 << 1.0, 0.0, kappa;
  try {
    patched_flow(def, 0.0, y0, y_max, &crossings, ropts);
  } catch (const PatchedFlowError&) {
    // divergence of the residual bracket error: expected, profile truncated
  }
  if (crossings.empty()) throw std::runtime_error("no sign change resolved");
  const double y_cut = crossings.back().s;

  Profile pr;
  pr.params = ProblemParams{n, 1, 2, 1.0 + n + 4.0};
  pr.kind = ProblemKind::CauchyProblem;
  pr.second_deriv_origin = kappa;  // F(0) = 1 normalization
  pr.interface_a = y_cut;
  pr.zero_count = int(crossings.size());
  pr.interior_sign_changes = int(crossings.size()) - 1;
  for (const auto& q : pts) {
    if (q[0] > y_cut + 1e-14) break;
    pr.grid.push_back(q[0]);
    pr.values.push_back(q[1]);
    pr.d1.push_back(q[2]);
    pr.d2.push_back(q[3]);
    pr.d3.push_back(q[1] == 0.0
                        ? 0.0
                        : beta * q[0] *
                              std::copysign(
                                  std::pow(std::abs(q[1]), 1.0 - n), q[1]));
  }
  // rescale to unit mass with the scaling family
  const double mass = 2.0 * trapezoid(pr.grid, pr.values);
  const double gs = std::pow(mass, -n / (4.0 + n));
  const double vsc = std::pow(mass, -4.0 / (4.0 + n));
  for (size_t i = 0; i < pr.grid.size(); ++i) {
    pr.grid[i] *= gs;
    pr.values[i] *= vsc;
    pr.d1[i] *= vsc / gs;
    pr.d2[i] *= vsc / (gs * gs);
    pr.d3[i] *= vsc / (gs * gs * gs);
  }
  pr.interface_a *= gs;
  pr.mass = 1.0;
  return pr;
}

// ---- interface expansion ------------------------------------------------

InterfaceExpansion interface_expansion(const ProblemParams& params,
                                       int order) {
  const double n = params.n;
  if (!(n > 0) || !(n < 3))
    throw std::invalid_argument("expansion defined for n in (0, 3)");
  if (order < 1) throw std::invalid_argument("order >= 1 required");
  InterfaceExpansion ex;
  if (std::abs(n - 1.5) < 1e-12) {
    ex.leading_exponent = 2.0;
    ex.log_power = 2.0 / 3.0;
    ex.log_factor = 0.75 * params.beta();
    ex.terms = {{2.0, 1.0}};
    if (order > 1)
      throw std::invalid_argument(
          "only the leading log-corrected term is implemented at n = 3/2");
    return ex;
  }
  if (n > 1.5) {
    ex.leading_exponent = 3.0 / n;
    if (order > 1)
      throw std::invalid_argument(
          "only the leading constant-state term is implemented for n > 3/2");
    ex.terms = {{3.0 / n,
                 std::pow(params.beta(), 1.0 / n) * osc_equilibrium(n)}};
    return ex;
  }
  ex.leading_exponent = 2.0;
  SingularSeries ser = interface_series(n, params.beta(), 1.0, 1.0);
  for (const auto& t : ser.terms) {
    if (int(ex.terms.size()) >= order) break;
    ex.terms.push_back(t);
  }
  if (int(ex.terms.size()) < order)
    throw std::invalid_argument("order beyond implemented expansion depth");
  return ex;
}

double profile_residual_sup(const Profile& p) {
  if (p.params.N != 1)
    throw std::invalid_argument("residual check uses the N=1 form");
  const double n = p.params.n, beta = p.params.beta();
  double sup = 0;
  for (size_t i = 0; i < p.grid.size(); ++i) {
    const double F = p.values[i];
    const double r =
        std::pow(std::abs(F), n) * p.d3[i] - beta * F * p.grid[i];
    sup = std::max(sup, std::abs(r));
  }
  return sup;
}

}  // namespace tfe
