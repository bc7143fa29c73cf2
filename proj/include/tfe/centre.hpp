#pragma once
#include <vector>

#include "tfe/params.hpp"

namespace tfe {

// Reduced dynamics on the one-dimensional slow subspace of the linearized
// flow at the critical absorption exponent p0 = 1 + n + 2m/N: the projection
// coefficients of the scaling generator and of the absorption nonlinearity
// against the ground eigenfunction psi_0, and the resulting asymptotic
// amplitude constants.
struct CentreCoefficients {
  double n = 1.0;
  int N = 1;
  int m = 2;
  double p0 = 0;          // critical absorption exponent
  double beta = 0;        // similarity exponent 1/(2m + nN)
  double gamma1 = 0;      // -<C F, psi_0>_rho, C the scaling-group generator
  double gamma2 = 0;      // <F^p0, psi_0>_rho
  double gamma_star = 0;  // ((p0-1) gamma2 / gamma1)^(-1/(p0-1))
  double a_star = 0;      // gamma_star^(n/4): selected interface scale
};

// C w = (n/4) grad w . zeta - w applied to a radial polynomial (coefficients
// in powers of r, ascending): the generator of the profile scaling family.
std::vector<double> apply_centre_operator(const std::vector<double>& coeffs,
                                          double n);

// Projection coefficients for the explicit n=1 profile (any N, m=2),
// computed by weighted quadrature against psi_0 with weight 1/(1-r^2).
CentreCoefficients centre_coefficients(int N);

// Slow-amplitude prediction b(tau) = gamma_star tau^(-1/(p0-1)).
double predicted_amplitude(const CentreCoefficients& c, double tau);

// The selected asymptotic pattern in original variables,
//   u(x, t) ~ (t ln t)^(-beta N) F_a*(x t^(-beta) (ln t)^(beta N / 4)),
// evaluated for the n=1 explicit profile.
double evaluate_pattern(const CentreCoefficients& c, double x, double t);

}  // namespace tfe
