#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tfe/ode.hpp"
#include "tfe/profiles.hpp"

namespace tfe {

namespace {

constexpr double kPi = std::numbers::pi;

// F''' = F y / 4 with an optional carried integral of F.
Rhs kernel_rhs(bool with_mass) {
  return [with_mass](double y, const Vec& v) {
    Vec d(v.size());
    d[0] = v[1];
    d[1] = v[2];
    d[2] = 0.25 * v[0] * y;
    if (with_mass) d[3] = v[0];
    return d;
  };
}

// growing-mode logarithmic derivative at the matching radius:
// F ~ y^(-1/3) exp(a0 y^(4/3)) gives F'/F = (4/3) a0 y^(1/3) - 1/(3y)
double growth_ratio(double y) {
  const double a0 = 0.75 * std::pow(4.0, -1.0 / 3.0);
  return (4.0 / 3.0) * a0 * std::cbrt(y) - 1.0 / (3.0 * y);
}

// shooting datum F''(0)/F(0) that suppresses the growing mode at radius L
double suppression_kappa(double L) {
  IvpOptions opts;
  opts.tol = 1e-13;
  opts.abs_tol = 1e-16;
  Vec u1(3), u2(3);
  u1 << 1, 0, 0;
  u2 << 0, 0, 1;
  const Vec e1 = integrate_ivp(kernel_rhs(false), u1, 0, L, opts).y_end();
  const Vec e2 = integrate_ivp(kernel_rhs(false), u2, 0, L, opts).y_end();
  const double r = growth_ratio(L);
  return -(e1[1] - r * e1[0]) / (e2[1] - r * e2[0]);
}

// k-th positive root of the Wronskian of the two even basis solutions; W
// satisfies the closed system W' = V, V' = U, U' = -(y/4) W with W ~ y near 0
double wronskian_root(int k) {
  IvpOptions opts;
  opts.tol = 1e-13;
  opts.abs_tol = 1e-16;
  const double y0v = 1e-3;
  Vec w0(3);
  w0 << y0v, 1.0, -y0v * y0v * y0v / 12.0;
  Rhs wrhs = [](double y, const Vec& v) {
    Vec d(3);
    d[0] = v[1];
    d[1] = v[2];
    d[2] = -0.25 * y * v[0];
    return d;
  };
  std::vector<EventFn> evs{[](double, const Vec& v) { return v[0]; }};
  Trajectory tr = integrate_ivp(wrhs, w0, y0v, 30.0, opts, evs);
  if (int(tr.events.size()) < k)
    throw std::runtime_error("requested root beyond the search radius");
  return tr.events[k - 1].t;
}

}  // namespace

std::pair<Profile, KernelBundle> fundamental_kernel(double tol) {
  double kappa = suppression_kappa(10.0), L = 10.0;
  bool settled = false;
  for (; L + 2.0 <= 16.5; ) {
    const double next = suppression_kappa(L + 2.0);
    const bool ok = std::abs(next - kappa) < tol;
    kappa = next;
    L += 2.0;
    if (ok) {
      settled = true;
      break;
    }
  }
  if (!settled)
    throw std::runtime_error(
        "growing-mode suppression did not settle at the requested tol");

  // Build the profile backward from a distant double zero: integrating
  // forward from (1, 0, kappa) amplifies the residual growing mode by
  // exp(a0 y^(4/3)) and wrecks both the tail and the mass, while the
  // backward direction is stable and lands within the approximant spacing
  // of the true kernel.  kappa stays as an independent consistency check.
  const double y_end = 16.0;
  const double y_launch = wronskian_root(10);  // ~25.6, envelope ~1e-9 there
  Vec f0(4);
  f0 << 0, 0, 1, 0;
  IvpOptions opts;
  opts.tol = 1e-13;
  opts.abs_tol = 1e-16;
  opts.max_step = 0.05;
  std::vector<EventFn> evs{[](double, const Vec& v) { return v[0]; }};
  Trajectory tr = integrate_ivp(kernel_rhs(true), f0, y_launch, 0.0, opts, evs);
  const Vec fin = tr.y_end();
  const double sgn = fin[0] > 0 ? 1.0 : -1.0;  // make F(0) > 0
  if (std::abs(fin[2] / fin[0] - kappa) > 100 * std::max(tol, 1e-9))
    throw std::runtime_error(
        "backward kernel disagrees with the suppression datum");

  Profile pr;
  pr.params = ProblemParams{0.0, 1, 2, 6.0};
  pr.kind = ProblemKind::CauchyProblem;
  pr.second_deriv_origin = fin[2] / fin[0];
  pr.interface_a = y_end;  // truncation radius (support is unbounded)
  const double mass = 2.0 * (-fin[3]) * sgn;  // integral accumulated downward
  for (size_t i = tr.times.size(); i-- > 0;) {
    const double y = tr.times[i];
    if (y > y_end) continue;
    if (!pr.grid.empty() && y <= pr.grid.back()) continue;
    const Vec& v = tr.states[i];
    pr.grid.push_back(y);
    pr.values.push_back(sgn * v[0] / mass);
    pr.d1.push_back(sgn * v[1] / mass);
    pr.d2.push_back(sgn * v[2] / mass);
    pr.d3.push_back(sgn * 0.25 * v[0] * y / mass);
  }
  pr.mass = 1.0;
  std::vector<double> zeros;
  for (const auto& ev : tr.events)
    if (ev.t < y_end) zeros.push_back(ev.t);
  std::sort(zeros.begin(), zeros.end());
  pr.zero_count = int(zeros.size());
  pr.interior_sign_changes = int(zeros.size());

  KernelBundle kb;
  kb.c1 = 0.375 * std::pow(4.0, -1.0 / 3.0);
  kb.c2 = kb.c1 * std::sqrt(3.0);
  // fit the oscillation phase and envelope amplitude from the zeros in the
  // asymptotic window
  std::vector<double> window;
  for (double z : zeros)
    if (z > 6.0 && z < 13.0) window.push_back(z);
  if (window.size() >= 3) {
    double phase_sum = 0;
    for (double z : window) {
      const double r = std::remainder(kb.c2 * std::pow(z, 4.0 / 3.0) -
                                          kPi / 2.0,
                                      kPi);
      phase_sum += r;
    }
    const double delta = phase_sum / window.size();
    // envelope from midpoints between consecutive zeros (near extrema)
    double amp_sum = 0;
    int amp_cnt = 0;
    size_t gi = 0;
    for (size_t j = 0; j + 1 < window.size(); ++j) {
      const double ym = 0.5 * (window[j] + window[j + 1]);
      while (gi + 1 < pr.grid.size() && pr.grid[gi + 1] < ym) ++gi;
      const double Fm = pr.values[gi] * mass;  // unnormalized fit
      amp_sum += std::abs(Fm) * std::cbrt(ym) *
                 std::exp(kb.c1 * std::pow(ym, 4.0 / 3.0));
      ++amp_cnt;
    }
    const double R = amp_cnt ? amp_sum / amp_cnt : 0.0;
    kb.s0 = delta;
    kb.A1 = R * std::cos(delta) / mass;
    kb.A2 = R * std::sin(delta) / mass;
  }
  return {pr, kb};
}

Profile fbp_kernel_sequence(int k) {
  if (k < 1) throw std::invalid_argument("k >= 1 required");
  const double yk = wronskian_root(k);

  // backward integration from the double zero fixes the solution up to
  // scale; it is automatically even
  Vec f0(4);
  f0 << 0, 0, 1, 0;
  IvpOptions bopts;
  bopts.tol = 1e-13;
  bopts.abs_tol = 1e-16;
  bopts.max_step = 0.05;
  std::vector<EventFn> evs{[](double, const Vec& v) { return v[0]; }};
  Trajectory bt = integrate_ivp(kernel_rhs(true), f0, yk, 0.0, bopts, evs);
  const Vec fin = bt.y_end();
  if (std::abs(fin[1]) > 1e-7 * std::abs(fin[0]))
    throw std::runtime_error("backward solution failed the evenness check");

  const double sgn = fin[0] > 0 ? 1.0 : -1.0;  // make F(0) > 0
  const double mass = 2.0 * (-fin[3]) * sgn;   // integral accumulated downward
  Profile pr;
  pr.params = ProblemParams{0.0, 1, 2, 6.0};
  pr.kind = ProblemKind::FBP;
  pr.interface_a = yk;
  pr.second_deriv_origin = fin[2] / fin[0];
  pr.interior_sign_changes = 0;
  for (const auto& ev : bt.events)
    if (ev.t > 1e-9 && ev.t < yk - 1e-9) ++pr.interior_sign_changes;
  pr.zero_count = pr.interior_sign_changes + 1;  // zeros on (0, yk]
  for (size_t i = bt.times.size(); i-- > 0;) {
    const double y = bt.times[i];
    if (!pr.grid.empty() && y <= pr.grid.back()) continue;
    const Vec& v = bt.states[i];
    pr.grid.push_back(y);
    pr.values.push_back(sgn * v[0] / mass);
    pr.d1.push_back(sgn * v[1] / mass);
    pr.d2.push_back(sgn * v[2] / mass);
    pr.d3.push_back(sgn * 0.25 * v[0] * y / mass);
  }
  pr.mass = 1.0;
  return pr;
}

}  // namespace tfe
