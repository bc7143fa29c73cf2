#include "tfe/centre.hpp"

#include <cmath>
#include <stdexcept>

#include "tfe/quadrature.hpp"
#include "tfe/spectral.hpp"

namespace tfe {

std::vector<double> apply_centre_operator(const std::vector<double>& coeffs,
                                          double n) {
  // (n/4) r d/dr - 1 acts diagonally on monomials: r^j -> (n j / 4 - 1) r^j
  std::vector<double> out(coeffs.size());
  for (size_t j = 0; j < coeffs.size(); ++j)
    out[j] = (n * double(j) / 4.0 - 1.0) * coeffs[j];
  return out;
}

CentreCoefficients centre_coefficients(int N) {
  ProblemParams params{1.0, N, 2, 6.0};
  params.p = params.p_critical();
  params.validate();

  CentreCoefficients c;
  c.n = 1.0;
  c.N = N;
  c.m = 2;
  c.p0 = params.p_critical();
  c.beta = params.beta();

  // explicit profile F = c0 (1 - r^2)^2 on the unit ball and ground
  // eigenfunction psi_0 = b0 (r^2 - 1), normalized in L2_rho
  const double c0 = params.c0();
  const double b0 = -std::sqrt((N + 2) / (2.0 * unit_ball_volume(N)));
  auto F = [&](double r) {
    const double w = 1.0 - r * r;
    return c0 * w * w;
  };
  auto dF = [&](double r) { return -4.0 * c0 * r * (1.0 - r * r); };
  auto psi0 = [&](double r) { return b0 * (r * r - 1.0); };
  const double measure = N * unit_ball_volume(N);

  // gamma1 = -<C F, psi_0>_rho with C F = (1/4) F' r - F
  auto h1 = [&](double r) {
    const double cf = 0.25 * dF(r) * r - F(r);
    return measure * cf * psi0(r) / (1.0 - r * r) * std::pow(r, N - 1);
  };
  c.gamma1 = -quad_weighted(h1, 0.0, 1.0, 1.0);

  // gamma2 = <F^p0, psi_0>_rho
  auto h2 = [&](double r) {
    return measure * std::pow(F(r), c.p0) * psi0(r) / (1.0 - r * r) *
           std::pow(r, N - 1);
  };
  c.gamma2 = quad_weighted(h2, 0.0, 1.0, 1.0);

  if (!(c.gamma1 > 0) || !(c.gamma2 > 0))
    throw std::runtime_error("projection coefficients lost positivity");

  c.gamma_star =
      std::pow((c.p0 - 1.0) * c.gamma2 / c.gamma1, -1.0 / (c.p0 - 1.0));
  c.a_star = std::pow(c.gamma_star, c.n / 4.0);
  return c;
}

double predicted_amplitude(const CentreCoefficients& c, double tau) {
  if (!(tau > 0)) throw std::invalid_argument("amplitude needs tau > 0");
  return c.gamma_star * std::pow(tau, -1.0 / (c.p0 - 1.0));
}

double evaluate_pattern(const CentreCoefficients& c, double x, double t) {
  if (!(t > 1.0)) throw std::invalid_argument("pattern needs t > 1");
  const double lt = std::log(t);
  const double amp = std::pow(t * lt, -c.beta * c.N);
  const double zeta = x * std::pow(t, -c.beta) * std::pow(lt, c.beta * c.N / 4.0);
  // F_a*(zeta) = a*^(4/n) F(zeta / a*) for the n=1 explicit profile
  ProblemParams params{c.n, c.N, c.m, c.p0};
  const double r = std::abs(zeta) / c.a_star;
  if (r >= 1.0) return 0.0;
  const double w = 1.0 - r * r;
  return amp * std::pow(c.a_star, 4.0 / c.n) * params.c0() * w * w;
}

}  // namespace tfe
