#include "tfe/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace tfe {

namespace {
// 12-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double gx[6] = {0.1252334085114689, 0.3678314989981802,
                          0.5873179542866175, 0.7699026741943047,
                          0.9041172563704749, 0.9815606342467192};
constexpr double gw[6] = {0.2491470458134028, 0.2334925365383548,
                          0.2031674267230659, 0.1600783285433462,
                          0.1069393259953184, 0.0471753363865118};

double gauss_panel(const std::function<double(double)>& h, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < 6; ++i) {
    s += gw[i] * (h(mid + half * gx[i]) + h(mid - half * gx[i]));
  }
  return s * half;
}

double graded(const std::function<double(double)>& h, double a, double b,
              int depth, int panels_per_cell, double alpha) {
  // cells [a, b-w], [b-w, b-w/2], ... geometric toward b
  double total = 0.0;
  double left = a, width = (b - a) * 0.5;
  for (int d = 0; d < depth; ++d) {
    double right = b - width;
    double cell = 0.0;
    double ph = (right - left) / panels_per_cell;
    for (int p = 0; p < panels_per_cell; ++p)
      cell += gauss_panel(h, left + p * ph, left + (p + 1) * ph);
    total += cell;
    left = right;
    width *= 0.5;
  }
  // Final sliver [b-w, b]: freeze the smooth factor of h = s(r) (b-r)^alpha
  // at the midpoint and integrate the algebraic part analytically.
  double w = b - left;
  double s_mid = h(b - 0.5 * w) * std::pow(0.5 * w, -alpha);
  total += s_mid * std::pow(w, alpha + 1.0) / (alpha + 1.0);
  return total;
}
}  // namespace

double quad_gauss(const std::function<double(double)>& h, double a, double b,
                  int panels) {
  double s = 0.0, ph = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    s += gauss_panel(h, a + p * ph, a + (p + 1) * ph);
  return s;
}

double quad_weighted(const std::function<double(double)>& h, double a,
                     double b, double endpoint_exponent) {
  if (endpoint_exponent <= -1.0)
    throw std::invalid_argument("quad_weighted: non-integrable endpoint");
  double v1 = graded(h, a, b, 32, 2, endpoint_exponent);
  double v2 = graded(h, a, b, 40, 3, endpoint_exponent);
  double scale = std::max({std::abs(v1), std::abs(v2), 1e-300});
  if (std::abs(v1 - v2) > 1e-7 * scale)
    throw std::runtime_error("quad_weighted: refinement disagreement (singular?)");
  return v2;
}

}  // namespace tfe
