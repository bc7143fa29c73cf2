#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "tfe/profiles.hpp"

using namespace tfe;

namespace {

// least-squares slope of log F vs log(1 - y/a) over a window near the
// interface
double interface_exponent_fit(const Profile& p, double x_lo, double x_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (size_t i = 0; i < p.grid.size(); ++i) {
    const double x = 1.0 - p.grid[i] / p.interface_a;
    if (x < x_lo || x > x_hi || p.values[i] <= 0) continue;
    const double lx = std::log(x), ly = std::log(p.values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++cnt;
  }
  REQUIRE(cnt >= 5);
  return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

}  // namespace

TEST_CASE("closed-form profile: residual oracle and constants") {
  for (int N : {1, 2, 3}) {
    const double c0 = 1.0 / (8.0 * (N + 2) * (N + 4));
    CHECK(explicit_residual_sup(2, N, 1.3, c0) < 1e-10);
  }
  const double a = std::pow(120.0, 0.25);
  Profile p = explicit_profile_n1(1, a);
  CHECK(p.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.second_deriv_origin ==
        doctest::Approx(-4.0 / std::sqrt(120.0)).epsilon(1e-12));
  CHECK(p.values.back() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.d1.back() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.zero_count == 0);
  // N=2, a=1: F(0) = 1/192
  Profile p2 = explicit_profile_n1(2, 1.0);
  CHECK(p2.values[0] == doctest::Approx(1.0 / 192.0).epsilon(1e-13));
}

TEST_CASE("general half-order closed form: the residual decides c0") {
  ProblemParams m2{1.0, 1, 2, 6.0};
  CHECK(m2.c0() == doctest::Approx(1.0 / 120.0).epsilon(1e-14));
  CHECK(c0_double_factorial_form(2, 1) ==
        doctest::Approx(1.0 / 240.0).epsilon(1e-14));
  CHECK(explicit_residual_sup(2, 1, 1.0, m2.c0()) < 1e-12);
  CHECK(explicit_residual_sup(2, 1, 1.0, c0_double_factorial_form(2, 1)) >
        1e-4);
  ProblemParams m2n2{1.0, 2, 2, 5.0};
  CHECK(m2n2.c0() == doctest::Approx(1.0 / 192.0).epsilon(1e-14));
  CHECK(explicit_residual_sup(2, 2, 1.0, m2n2.c0()) < 1e-12);
  // m=3: constant fixed by the same oracle
  ProblemParams m3{1.0, 1, 3, 8.0};
  CHECK(explicit_residual_sup(3, 1, 1.0, m3.c0()) < 1e-12);
  Profile p3 = explicit_profile_2m_n1(3, 1);
  CHECK(p3.values[0] == doctest::Approx(m3.c0()).epsilon(1e-13));
}

TEST_CASE("interface-launched shooting reproduces the n=1 closed form") {
  Profile num = shoot_fbp_profile(ProblemParams{1.0, 1, 2, 6.0});
  const double a = std::pow(120.0, 0.25);
  CHECK(num.interface_a == doctest::Approx(a).epsilon(1e-8));
  CHECK(num.second_deriv_origin ==
        doctest::Approx(-4.0 / std::sqrt(120.0)).epsilon(1e-8));
  double sup = 0;
  for (size_t i = 0; i < num.grid.size(); ++i) {
    const double y = num.grid[i];
    const double ex = std::pow(a * a - y * y, 2.0) / 120.0 / 120.0 * 120.0;
    sup = std::max(sup, std::abs(num.values[i] - ex));
  }
  CHECK(sup < 1e-6);
  CHECK(num.values[num.grid.size() / 2] > 0);
  CHECK(profile_residual_sup(num) < 1e-9);
}

TEST_CASE("shooting data across the mobility range") {
  struct Datum {
    double n, d2;
  };
  // frozen from an independent high-resolution shooting run
  for (auto [n, d2] : {Datum{0.25, -0.33644592}, Datum{0.5, -0.34328603},
                       Datum{0.75, -0.35265328}, Datum{1.25, -0.38170734},
                       Datum{1.4, -0.39418469}}) {
    Profile p = shoot_fbp_profile(ProblemParams{n, 1, 2, 2.0 + n + 4.0});
    INFO("n = " << n);
    CHECK(p.second_deriv_origin == doctest::Approx(d2).epsilon(2e-5));
    CHECK(p.values[0] == doctest::Approx(1.0).epsilon(1e-9));
    for (double v : p.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("interface exponent crosses 2 -> 3/n continuously") {
  Profile lo = shoot_fbp_profile(ProblemParams{1.45, 1, 2, 6.45});
  Profile hi = shoot_fbp_profile(ProblemParams{1.55, 1, 2, 6.55});
  const double e_lo = interface_exponent_fit(lo, 1e-4, 1e-2);
  const double e_hi = interface_exponent_fit(hi, 1e-4, 1e-2);
  CHECK(std::abs(e_lo - 2.0) < 0.1);
  CHECK(std::abs(e_hi - 3.0 / 1.55) < 0.1);
  CHECK(std::abs(e_lo - e_hi) < 0.25);
}

TEST_CASE("positive profile beyond the exponent transition") {
  Profile p = shoot_fbp_profile(ProblemParams{2.0, 1, 2, 7.0});
  CHECK(p.values[0] == doctest::Approx(1.0).epsilon(1e-9));
  for (double v : p.values) CHECK(v >= 0.0);
  const double e = interface_exponent_fit(p, 1e-5, 1e-3);
  CHECK(std::abs(e - 1.5) < 0.05);
}

TEST_CASE("changing-sign profiles match the frozen shooting data") {
  struct Datum {
    double n, d2;
  };
  for (auto [n, d2] : {Datum{0.2, -0.3414702}, Datum{1.0, -0.3697143}}) {
    Profile p = shoot_cp_profile(n);
    INFO("n = " << n);
    CHECK(p.second_deriv_origin == doctest::Approx(d2).epsilon(1e-3));
    CHECK(p.mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.zero_count >= 3);
    CHECK(p.d1[0] == doctest::Approx(0.0).epsilon(1e-14));
  }
  CHECK_THROWS(shoot_cp_profile(1.9));
}

TEST_CASE("fundamental kernel of the linear problem") {
  auto [p, kb] = fundamental_kernel(1e-6);
  CHECK(p.second_deriv_origin == doctest::Approx(-0.3379891).epsilon(2e-6));
  CHECK(kb.c1 == doctest::Approx(0.23623519).epsilon(1e-7));
  CHECK(kb.c2 == doctest::Approx(kb.c1 * std::sqrt(3.0)).epsilon(1e-14));
  CHECK(p.zero_count >= 4);
  CHECK(p.mass == doctest::Approx(1.0).epsilon(1e-10));
  // fitted bundle data present and sane
  CHECK(std::abs(kb.s0) < 3.2);
  CHECK(std::hypot(kb.A1, kb.A2) > 0);
}

TEST_CASE("kernel zero structure pinned by re-integration") {
  // first zero of the solution from (1, 0, kappa)
  auto [p, kb] = fundamental_kernel(1e-6);
  size_t i = 0;
  while (i < p.values.size() && p.values[i] > 0) ++i;
  REQUIRE(i < p.values.size());
  const double y_lo = p.grid[i - 1], y_hi = p.grid[i];
  CHECK(y_lo < 3.4534689);
  CHECK(y_hi > 3.4534689);
  (void)kb;
}

TEST_CASE("compact-support approximants of the kernel") {
  const double expected_yk[5] = {4.07739, 7.28641, 10.08387, 12.64358,
                                 15.04102};
  for (int k = 1; k <= 5; ++k) {
    Profile p = fbp_kernel_sequence(k);
    INFO("k = " << k);
    CHECK(p.interface_a == doctest::Approx(expected_yk[k - 1]).epsilon(1e-5));
    CHECK(p.zero_count == k);
    CHECK(p.interior_sign_changes == k - 1);
    CHECK(p.values.back() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // asymptotic spacing of the support radii
  Profile p8 = fbp_kernel_sequence(8);
  const double c2 = 0.375 * std::pow(4.0, -1.0 / 3.0) * std::sqrt(3.0);
  const double ratio =
      p8.interface_a / std::pow(8.0 * 3.14159265358979323846 / c2, 0.75);
  CHECK(ratio > 0.95);
  CHECK(ratio < 1.05);
}

TEST_CASE("approximants converge to the kernel on a central window") {
  auto [ker, kb] = fundamental_kernel(1e-6);
  auto sup_diff = [&](const Profile& p) {
    double sup = 0;
    size_t j = 0;
    for (size_t i = 0; i < ker.grid.size() && ker.grid[i] <= 2.0; ++i) {
      while (j + 1 < p.grid.size() && p.grid[j + 1] <= ker.grid[i]) ++j;
      const double t = (ker.grid[i] - p.grid[j]) /
                       (p.grid[j + 1] - p.grid[j]);
      const double v = p.values[j] * (1 - t) + p.values[j + 1] * t;
      sup = std::max(sup, std::abs(v - ker.values[i]));
    }
    return sup;
  };
  const double d3 = sup_diff(fbp_kernel_sequence(3));
  const double d5 = sup_diff(fbp_kernel_sequence(5));
  const double d7 = sup_diff(fbp_kernel_sequence(7));
  CHECK(d5 < d3);
  CHECK(d7 < d5);
  (void)kb;
}

TEST_CASE("local interface behaviour switch") {
  CHECK(interface_expansion(ProblemParams{1.0, 1, 2, 6.0}, 3)
            .leading_exponent == doctest::Approx(2.0));
  CHECK(interface_expansion(ProblemParams{2.0, 1, 2, 7.0}, 1)
            .leading_exponent == doctest::Approx(1.5));
  InterfaceExpansion ex = interface_expansion(ProblemParams{1.5, 1, 2, 6.5}, 1);
  CHECK(ex.leading_exponent == doctest::Approx(2.0));
  CHECK(ex.log_power == doctest::Approx(2.0 / 3.0));
  CHECK(ex.log_factor == doctest::Approx(0.75 / 5.5).epsilon(1e-14));
  CHECK_THROWS(interface_expansion(ProblemParams{1.0, 1, 2, 6.0}, 50));
}
