#pragma once
#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tfe {

using Vec = Eigen::VectorXd;
using Rhs = std::function<Vec(double, const Vec&)>;
using EventFn = std::function<double(double, const Vec&)>;

struct Event {
  double t;
  Vec state;
  int id;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<Event> events;

  double t_end() const { return times.back(); }
  const Vec& y_end() const { return states.back(); }
};

struct IvpOptions {
  double tol = 1e-10;
  double abs_tol = 1e-13;
  double max_step = 1e100;
  double first_step = 0.0;             // 0 -> auto
  bool stop_at_first_event = false;
  long max_steps = 2'000'000;
};

struct IvpError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dormand-Prince 5(4) with quartic dense output; events located on the
// dense output by bisection/secant.
Trajectory integrate_ivp(const Rhs& rhs, const Vec& y0, double t0, double t1,
                         const IvpOptions& opts = {},
                         const std::vector<EventFn>& events = {});

// Hybrid bisection/secant bracketed root solve.
double solve_bracketed(const std::function<double(double)>& g, double a,
                       double b, double tol = 1e-14, int max_iter = 200);

}  // namespace tfe
