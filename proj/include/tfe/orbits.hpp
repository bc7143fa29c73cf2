#pragma once
#include <array>
#include <optional>
#include <vector>

#include "tfe/ode.hpp"

namespace tfe {

// Interface-oscillation ODE:
//   phi''' + 3(mu-1) phi'' + (3mu^2-6mu+2) phi' + mu(mu-1)(mu-2) phi
//     + phi/|phi|^n = 0,   mu = 3/n.
struct OscCoeffs {
  double mu, a2, a1, a0;
};
OscCoeffs osc_coeffs(double n);

// Vector field away from phi = 0 (callers cross zeros with the series patch).
Rhs oscillatory_rhs(double n);

// Constant equilibria phi_pm for n in (3/2, 3).
double osc_equilibrium(double n);

struct PeriodicOrbit {
  double n = 0;
  double mu = 0;
  double period = 0;
  double v = 0, A = 0;  // phi', phi'' at the section phi=0, phi'>0
  std::vector<std::array<double, 4>> samples;  // (s, phi, phi', phi'')
  std::vector<double> floquet_moduli;          // all three, sorted descending
  double closure_defect = 0;
  double int_dphi_sq = 0, int_d2phi_sq = 0;    // over one period
};

struct BifurcationTrace {
  std::vector<double> n_values;
  std::vector<double> periods;
  double n_h_lo = 0, n_h_hi = 0;
  double n_h_estimate = 0;
  double period_cap = 0;
};

// One positive arch from an upward zero crossing with data (v, A):
// series launch, smooth integration, series landing.  Returns the data of
// the next arch in the reflected (positive-slope) frame plus the half
// durations and the arch integrals of (phi')^2, (phi'')^2.
struct ArchResult {
  double v1, A1, duration, i1, i2;
};
std::optional<ArchResult> osc_arch(double n, double v, double A,
                                   double duration_cap = 1e3);

// Closed-form n=1 orbit (piecewise linear ODE); theta solves
// theta^3 - 2 theta^2 - 2 theta + 1 = 0 on (0,1), period = -2 ln theta.
PeriodicOrbit exact_orbit_n1(int n_samples = 2048);
double exact_theta_n1();

PeriodicOrbit find_periodic_orbit(double n, const Vec& initial_state,
                                  double transient = 50.0,
                                  int n_samples = 2048);

std::vector<double> floquet_multipliers(const PeriodicOrbit& orbit);

BifurcationTrace trace_heteroclinic_bifurcation(double n_lo, double n_hi,
                                                double period_cap = 50.0);

// Fixed-duration integration of the oscillation ODE through zero crossings
// (series patches at |phi| = delta0).  Returns the final state; optionally
// records upward crossings (s, v, A).
Vec osc_flow(double n, double s0, const Vec& y0, double s_end,
             std::vector<std::array<double, 3>>* upward_crossings = nullptr,
             double tol = 1e-12);

}  // namespace tfe
