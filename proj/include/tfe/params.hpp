#pragma once
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tfe {

// Exponents and derived constants of the similarity problem
//   u_t = -div(|u|^n grad Lap u) - |u|^(p-1) u   (order 2m generalization).
struct ProblemParams {
  double n = 1.0;   // mobility exponent
  int N = 1;        // spatial dimension
  int m = 2;        // half-order of the operator
  double p = 6.0;   // absorption exponent

  double beta() const { return 1.0 / (2.0 * m + n * N); }
  double p_critical() const { return 1.0 + n + 2.0 * m / N; }
  double mu() const {
    if (n <= 0) throw std::invalid_argument("mu undefined for n <= 0");
    return 3.0 / n;
  }

  // Normalization constant of the explicit n=1 profile c0 (1-|y|^2)^m on the
  // unit ball, fixed by Lap^(m-1) F = (-1)^m (beta/2) |y|^2 + const.
  // For m=2: c0 = 1/(8(N+2)(N+4)).
  double c0() const;

  void validate() const {
    if (N < 1) throw std::invalid_argument("N >= 1 required");
    if (m < 2) throw std::invalid_argument("m >= 2 required");
    if (n < 0) throw std::invalid_argument("n >= 0 required");
    if (p <= 1) throw std::invalid_argument("p > 1 required");
  }
};

// Volume of the unit ball in R^N.
inline double unit_ball_volume(int N) {
  return std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0 + 1.0);
}

// Radial Laplacian acting on r^(2j): 2j(2j+N-2) r^(2j-2).
inline double radial_lap_factor(int j2, int N) {  // j2 = 2j
  return double(j2) * (j2 + N - 2);
}

inline double ProblemParams::c0() const {
  // Apply Lap^(m-1) to (1-r^2)^m expanded in powers of r^2 and match the
  // r^2 coefficient to (-1)^m beta/2.  Exact small combinatorics.
  // (1-r^2)^m = sum_j C(m,j)(-1)^j r^(2j); Lap^(m-1) r^(2j) leaves terms
  // r^(2(j-m+1)); the r^2 coefficient comes from j = m.
  double coef = (m % 2 == 0 ? 1.0 : -1.0);  // C(m,m)(-1)^m
  int e = 2 * m;
  for (int q = 0; q < m - 1; ++q) {
    coef *= radial_lap_factor(e, N);
    e -= 2;
  }
  // now coef * c0 * r^2 must equal (-1)^m (beta()/2) r^2
  double target = (m % 2 == 0 ? 1.0 : -1.0) * beta() / 2.0;
  return target / coef;
}

}  // namespace tfe
