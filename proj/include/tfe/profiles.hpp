#pragma once
#include <utility>
#include <vector>

#include "tfe/params.hpp"

namespace tfe {

enum class ProblemKind { FBP, CauchyProblem };

// Radial similarity profile on [0, a]; even extension implied.
struct Profile {
  ProblemParams params;
  std::vector<double> grid;    // y, increasing, grid.back() ~ interface
  std::vector<double> values;  // F
  std::vector<double> d1, d2, d3;  // F', F'', F'''
  double interface_a = 0;
  double mass = 0;  // integral of F over R^N (radial measure)
  ProblemKind kind = ProblemKind::FBP;
  // Shooting datum in the scale-invariant normalization F(0) = 1,
  // i.e. F''(0) F(0)^(n/2-1), which is invariant under the scaling family
  // F_a(y) = a^(4/n) F(y/a).
  double second_deriv_origin = 0;
  int zero_count = 0;            // zeros of F on (0, a]
  int interior_sign_changes = 0; // transversal sign changes on (0, a)
};

// Decaying-bundle data of the fourth-order linear kernel equation
// F''' = F y / 4: envelope/oscillation rates and the fitted amplitudes
// F ~ y^(-1/3) exp(-c1 y^(4/3)) [A1 cos(c2 y^(4/3)) + A2 sin(c2 y^(4/3))].
struct KernelBundle {
  double c1 = 0, c2 = 0;
  double A1 = 0, A2 = 0;
  double s0 = 0;  // fitted oscillation phase offset
};

// Local behaviour of F at the interface y = a: F ~ sum c_j (1-y/a)^(e_j),
// with an extra |ln(1-y/a)|^log_power factor on the leading term when
// log_power != 0 (only at n = 3/2).
struct InterfaceExpansion {
  double leading_exponent = 0;
  double log_power = 0;
  double log_factor = 0;  // coefficient inside the log power
  std::vector<std::pair<double, double>> terms;  // (exponent, coefficient)
};

// F(y) = c0 (a^2 - y^2)^2 for n=1, m=2; closed form, any dimension.
Profile explicit_profile_n1(int N, double a);

// F(y) = c0 (1 - |y|^2)^m for n=1, general half-order m >= 2 on the unit
// ball; c0 fixed by the residual of the profile equation.
Profile explicit_profile_2m_n1(int m, int N);

// Nonnegative compactly supported profile of |F|^n F''' = beta F y with
// zero height and contact angle at the interface, normalized to F(0) = 1.
// Shooting is launched from the interface local expansion (exponent 2 for
// n < 3/2, log-corrected at n = 3/2, 3/n for n in (3/2, 3)).
Profile shoot_fbp_profile(const ProblemParams& params);

// Oscillatory changing-sign profile of the same equation on the whole line
// (unit mass, F'(0) = 0), computed by bisection on F''(0) with local series
// patches across the sign changes; n = 0 delegates to fundamental_kernel.
Profile shoot_cp_profile(double n);

// n = 0 fundamental kernel of F''' = F y / 4 with the growing mode
// suppressed at a matching radius, rescaled to unit mass.
std::pair<Profile, KernelBundle> fundamental_kernel(double tol = 1e-6);

// k-th compactly supported solution of F''' = F y / 4 with
// F(y_k) = F'(y_k) = 0 (k-th root y_k of the Wronskian of the even basis
// solutions), unit mass.
Profile fbp_kernel_sequence(int k);

// Formal local expansion coefficients at the interface (unit amplitude,
// interface at 1), truncated to `order` terms.
InterfaceExpansion interface_expansion(const ProblemParams& params, int order);

// Sup of the once-integrated N=1 profile equation residual
// |F|^n F''' - beta F y over the stored grid.
double profile_residual_sup(const Profile& p);

// Sup over [0, a] of the full radial divergence-form residual
// (-1)^(m+1) div(F grad Lap^(m-1) F) + beta grad F . y + beta N F
// for the closed-form n=1 profile c0 (a^2 - r^2)^m (exact polynomial
// arithmetic; the oracle that fixes c0).
double explicit_residual_sup(int m, int N, double a, double c0);

// Closed-form double-factorial normalization candidate
// (1/2) N!! / ((2m)!! (2m+N)!!); kept for comparison with the
// residual-verified c0 — they disagree for m=2, and the residual decides.
double c0_double_factorial_form(int m, int N);

// Computed oscillatory-range limit: above this mobility exponent the
// interface oscillation has no periodic orbit and changing-sign shooting is
// rejected.
inline constexpr double kOscillatoryLimit = 1.758665026;

}  // namespace tfe
