#include "tfe/ode.hpp"

#include <algorithm>
#include <cmath>

namespace tfe {

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense output weights (order 4 interpolant)
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseStep {
  double t, h;
  Vec y0;
  Vec r1, r2, r3, r4, r5;
  Vec eval(double t_query) const {
    double s = (t_query - t) / h;
    double s1 = 1.0 - s;
    return r1 + s * (r2 + s1 * (r3 + s * (r4 + s1 * r5)));
  }
};

}  // namespace

double solve_bracketed(const std::function<double(double)>& g, double a,
                       double b, double tol, int max_iter) {
  double fa = g(a), fb = g(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (fa * fb > 0) throw std::invalid_argument("solve_bracketed: no sign change");
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(b - a) < tol) break;
    // secant candidate, guarded to the bracket interior
    double x = b - fb * (b - a) / (fb - fa);
    double lo = std::min(a, b), hi = std::max(a, b);
    double margin = 0.01 * (hi - lo);
    if (!(x > lo + margin && x < hi - margin)) x = 0.5 * (a + b);
    double fx = g(x);
    if (fx == 0) return x;
    if (fa * fx < 0) {
      b = x; fb = fx;
    } else {
      a = x; fa = fx;
    }
  }
  return 0.5 * (a + b);
}

Trajectory integrate_ivp(const Rhs& rhs, const Vec& y0, double t0, double t1,
                         const IvpOptions& opts,
                         const std::vector<EventFn>& events) {
  const double dir = (t1 >= t0) ? 1.0 : -1.0;
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);

  Vec y = y0;
  double t = t0;
  Vec k1 = rhs(t, y);
  if (!k1.allFinite()) throw IvpError("non-finite rhs at initial point");

  double h = opts.first_step;
  if (h == 0.0) {
    double scale = std::max(y.cwiseAbs().maxCoeff(), 1.0);
    double d = std::max(k1.cwiseAbs().maxCoeff() / scale, 1e-8);
    h = std::min({0.01 / d, std::abs(t1 - t0), opts.max_step});
  }
  h = std::min(h, opts.max_step) * dir;

  std::vector<double> ev_prev(events.size());
  for (size_t i = 0; i < events.size(); ++i) ev_prev[i] = events[i](t, y);

  long steps = 0;
  while (dir * (t1 - t) > 1e-14 * std::max(1.0, std::abs(t))) {
    if (++steps > opts.max_steps) throw IvpError("max step count exceeded");
    if (dir * (t + h - t1) > 0) h = t1 - t;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t)))
      throw IvpError("step-size underflow");

    Vec k2 = rhs(t + c2 * h, y + h * (a21 * k1));
    Vec k3 = rhs(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
    Vec k4 = rhs(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    Vec k5 = rhs(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    Vec k6 = rhs(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    Vec ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    Vec k7 = rhs(t + h, ynew);

    bool finite = k2.allFinite() && k3.allFinite() && k4.allFinite() &&
                  k5.allFinite() && k6.allFinite() && k7.allFinite() &&
                  ynew.allFinite();
    double err = 0.0;
    if (finite) {
      Vec ee = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      for (int i = 0; i < y.size(); ++i) {
        double sc = opts.abs_tol +
                    opts.tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        err = std::max(err, std::abs(ee[i]) / sc);
      }
    } else {
      err = 1e10;
    }

    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      continue;
    }

    // accepted: build dense interpolant
    DenseStep ds;
    ds.t = t;
    ds.h = h;
    ds.y0 = y;
    ds.r1 = y;
    ds.r2 = ynew - y;
    ds.r3 = h * k1 - ds.r2;
    ds.r4 = ds.r2 - h * k7 - ds.r3;
    ds.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    double t_new = t + h;
    bool stopped = false;
    for (size_t i = 0; i < events.size(); ++i) {
      double ev_new = events[i](t_new, ynew);
      if (ev_prev[i] == 0.0) { ev_prev[i] = ev_new; continue; }
      if (ev_prev[i] * ev_new < 0) {
        auto& ev = events[i];
        double te = solve_bracketed(
            [&](double tq) { return ev(tq, ds.eval(tq)); }, t, t_new,
            1e-14 * std::max(1.0, std::abs(t_new)));
        Vec ye = ds.eval(te);
        traj.events.push_back({te, ye, int(i)});
        if (opts.stop_at_first_event) {
          traj.times.push_back(te);
          traj.states.push_back(ye);
          return traj;
        }
      }
      ev_prev[i] = ev_new;
    }
    (void)stopped;

    t = t_new;
    y = ynew;
    k1 = k7;
    traj.times.push_back(t);
    traj.states.push_back(y);

    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
    if (std::abs(h) > opts.max_step) h = opts.max_step * dir;
  }
  return traj;
}

}  // namespace tfe
