#pragma once
#include <vector>

#include "tfe/params.hpp"

namespace tfe {

// Rescaled solution state on a fixed uniform cell-centered grid over a
// symmetric interval [-L, L].  The rescaled equation (tau = ln(1+t),
// v = (1+t)^(beta N) u, y = x (1+t)^(-beta)) reads
//   v_tau = -((|v|^n + eps) v_yyy - beta y v)_y - e^(-gamma tau) |v|^(p-1) v
// with gamma = N (p - p0) beta >= 0; the absorption term is autonomous
// exactly at the critical exponent.
struct SimState {
  ProblemParams params;
  double tau = 0;
  double h = 0;                 // cell width; y_i = -L + (i + 1/2) h
  double L = 0;                 // half-width of the domain
  std::vector<double> v;        // cell averages
  double eps = 0;               // mobility regularization
  bool absorption = true;
  double newton_tol = 1e-12;    // on the BDF residual in v units
  double last_mass_residual = 0;  // |dM/dtau + absorbed| of the last step

  double cell(int i) const { return -L + (i + 0.5) * h; }
  double mass() const;
  double amplitude() const;       // sup |v|
  double support_radius() const;  // outermost |y| with |v| above floor
};

// Decay-law exponent of the absorption in the rescaled frame.
double absorption_decay_rate(const ProblemParams& params);

// Bell-shaped compactly supported data A (1 - (y/R)^2)^2 on [-3R, 3R].
SimState make_sim_state(const ProblemParams& params, double amplitude,
                        double radius, int cells);

// One implicit backward-difference step; Newton to the stated residual,
// halving dtau internally up to 10 times.  Conservative stencil: the mass
// identity holds up to the Newton tolerance.
void step_rescaled_tfe(SimState& state, double dtau);

// E = -(1/2) int |v'|^2 - (1/(2(4+N))) int v y^2, the n=1 monotone quantity.
double lyapunov_monitor(const SimState& state);

struct SimTraceRow {
  double tau = 0;
  double b_amp = 0;
  double b_supp = 0;
  double mass = 0;
  double lyapunov = 0;
  double fitted_exponent = 0;  // local slope of ln b_amp vs ln tau
};

struct SimTrace {
  std::vector<SimTraceRow> rows;
  double max_mass_residual = 0;
  // sup-distance of v(., tau)/b against the collapsed profile shape
  // (1 - (zeta/120^(1/4))^2)^2, zeta = y b^(-1/4); critical runs only
  double final_shape_distance = 0;
  // sup-distance to the mass-matched steady profile at each sample;
  // supercritical runs only
  std::vector<double> profile_distance;
  SimState final_state{};
};

// Critical-absorption run (n=1, N=1, p=p0=6) from data riding above the
// predicted universal amplitude curve.
SimTrace run_critical_experiment(double tau_max, int cells = 512,
                                 double dtau = 0.01);

// Regression slope of ln b_amp against ln tau over the final decade
// [tau_end / 10, tau_end] of a trace.
double final_decade_exponent(const SimTrace& trace);

// Supercritical run (p > p0): mass settles to a positive limit and the
// state converges to the steady profile with that mass.
SimTrace run_supercritical_experiment(double p, double tau_max,
                                      int cells = 512, double dtau = 0.01);

}  // namespace tfe
