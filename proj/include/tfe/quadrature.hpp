#pragma once
#include <functional>

namespace tfe {

// Integral of h over [a, b] where the integrand may have an algebraic
// endpoint singularity at b of exponent `endpoint_exponent` (> -1 for
// integrability).  Composite Gauss-Legendre, geometrically graded toward b
// with ratio 1/2; accuracy cross-checked between two grading depths.
double quad_weighted(const std::function<double(double)>& h, double a,
                     double b, double endpoint_exponent = 0.0);

// Plain composite Gauss-Legendre on [a, b] with `panels` panels.
double quad_gauss(const std::function<double(double)>& h, double a, double b,
                  int panels = 16);

}  // namespace tfe
