#pragma once
#include <utility>
#include <vector>

namespace tfe {

// Local solution of a third-order ODE with an algebraically singular term
// near a transversal zero (or a degenerate interface zero), represented as a
// generalized power series sum c_k h^(e_k) with real exponents.  Built by
// Picard iteration; exponents mix the regular chain {1,2,3,...} with the
// singular chains {4-n+j, 7-2n+j, ...} (crossing) or {5-2n+j, ...}
// (interface).
struct SingularSeries {
  std::vector<std::pair<double, double>> terms;  // (exponent, coefficient)

  struct Jet {
    double f, df, ddf;
  };
  // Evaluate (f, f', f'') at h > 0.
  Jet eval(double h) const;

  // Integrals over [0, h] of (f')^2 and (f'')^2.
  std::pair<double, double> integrals_d1sq_d2sq(double h) const;
};

// Local model at a simple zero of
//   phi''' = -a2 phi'' - a1 phi' - a0 phi - (c0 + c1*h) sgn(phi) |phi|^(1-n)
// with phi = v h + A h^2/2 + ..., valid on h > 0 (v may be negative: the
// singular factor uses sgn(v)|v|^(1-n); callers keep phi*h > 0 by the odd
// symmetry of the equations used here).
SingularSeries crossing_series(double n, double a2, double a1, double a0,
                               double c0, double c1, double v, double A,
                               double emax = 8.0, int iters = 6);

// Local model at the FBP interface for F'''_x = -beta F^(1-n) (a - x),
// F = A x^2 + ...  (x measured inward from the interface at y = a; n < 3/2).
SingularSeries interface_series(double n, double beta, double a, double A,
                                double emax = 9.0, int iters = 8);

}  // namespace tfe
