#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "tfe/profiles.hpp"
#include "tfe/spectral.hpp"
#include "tfe/symmetry.hpp"

using namespace tfe;

TEST_CASE("closed-form eigenvalues, fourth order") {
  // N=1: c0 = 1/120 and lambda_k = k(k+2)(k+1)(k+3)/120
  CHECK(eigenvalue_closed_form(2, 1, 0) == doctest::Approx(0.0));
  CHECK(eigenvalue_closed_form(2, 1, 2) == doctest::Approx(1.0));
  CHECK(eigenvalue_closed_form(2, 1, 4) == doctest::Approx(7.0));
  CHECK(eigenvalue_closed_form(2, 1, 6) == doctest::Approx(25.2));
  CHECK(eigenvalue_closed_form(2, 1, 8) == doctest::Approx(66.0));
  // N=2: c0 = 1/192
  CHECK(eigenvalue_closed_form(2, 2, 2) == doctest::Approx(1.0));
  CHECK(eigenvalue_closed_form(2, 2, 4) == doctest::Approx(6.0));
  CHECK(eigenvalue_closed_form(2, 2, 6) == doctest::Approx(20.0));
  CHECK(eigenvalue_closed_form(2, 2, 8) == doctest::Approx(50.0));
  CHECK_THROWS(eigenvalue_closed_form(2, 1, 3));  // odd index
}

TEST_CASE("closed-form eigenvalues, general order") {
  // the product formula vanishes when a factor k + 2 - 2i hits zero
  CHECK(eigenvalue_closed_form(3, 1, 2) == doctest::Approx(0.0));
  CHECK_THROWS(eigenvalue_closed_form(4, 1, 0));  // below validity range
  // spacing grows like k^(2m)
  const double l1 = std::abs(eigenvalue_closed_form(3, 1, 4));
  const double l2 = std::abs(eigenvalue_closed_form(3, 1, 8));
  CHECK(l2 > l1);
}

TEST_CASE("non-radial sector constants") {
  CHECK(sector_constant(0, 3) == doctest::Approx(0.0));
  CHECK(sector_constant(1, 3) == doctest::Approx(2.0));
  CHECK(sector_constant(2, 3) == doctest::Approx(6.0));
  CHECK(sector_constant(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("polynomial eigenfunctions: ground state and normalization") {
  Spectrum sp = polynomial_eigenfunctions(1, 8);
  REQUIRE(sp.indices.size() == 5);
  CHECK(sp.omega_N == doctest::Approx(2.0));
  CHECK(sp.b0 == doctest::Approx(-std::sqrt(3.0 / 4.0)));
  // psi_0 = b0 (r^2 - 1)
  CHECK(sp.eigenfunctions[0][0] == doctest::Approx(-sp.b0));
  CHECK(sp.eigenfunctions[0][1] == doctest::Approx(0.0));
  CHECK(sp.eigenfunctions[0][2] == doctest::Approx(sp.b0));
  for (size_t i = 0; i < sp.eigenfunctions.size(); ++i) {
    CHECK(sp.eigenvalues[i] ==
          doctest::Approx(eigenvalue_closed_form(2, 1, sp.indices[i])));
    // vanishes at the interface
    CHECK(std::abs(eval_poly(sp.eigenfunctions[i], 1.0)) < 1e-10);
  }
}

TEST_CASE("polynomial eigenfunctions: orthonormal in the weighted inner product") {
  for (int N : {1, 2}) {
    Spectrum sp = polynomial_eigenfunctions(N, 8);
    for (size_t i = 0; i < sp.eigenfunctions.size(); ++i)
      for (size_t j = 0; j <= i; ++j) {
        const double g =
            poly_inner_rho(sp.eigenfunctions[i], sp.eigenfunctions[j], N);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-8);
      }
  }
}

TEST_CASE("weighted inner product in closed form") {
  // <1-r^2, 1-r^2> = N omega_N int_0^1 (1 - r^2) r^(N-1) dr
  std::vector<double> f{1.0, 0.0, -1.0};
  CHECK(poly_inner_rho(f, f, 1) == doctest::Approx(4.0 / 3.0));
  CHECK(poly_inner_rho(f, f, 2) == doctest::Approx(M_PI / 2.0));
  // arguments must vanish at the interface
  std::vector<double> bad{1.0};
  CHECK_THROWS(poly_inner_rho(bad, bad, 1));
}

TEST_CASE("discrete operator reproduces the closed-form spectrum") {
  for (int N : {1, 2}) {
    auto ev = discrete_eigenvalues_n1(N, 400, 4);
    REQUIRE(ev.size() == 4);
    CHECK(std::abs(ev[0]) < 1e-4);  // zero mode
    for (int j = 1; j < 4; ++j) {
      const double lam = eigenvalue_closed_form(2, N, 2 * j);
      CHECK(std::abs(-ev[j] - lam) / lam < 0.01);
    }
  }
}

TEST_CASE("discrete spectrum converges at second order") {
  // error ratio under grid doubling should exceed 2^1.5
  for (int N : {1, 2}) {
    for (int j : {1, 2, 3}) {
      const double lam = eigenvalue_closed_form(2, N, 2 * j);
      double prev = 0;
      for (int M : {100, 200, 400}) {
        auto ev = discrete_eigenvalues_n1(N, M, 4);
        const double err = std::abs(-ev[j] - lam);
        if (prev > 0) CHECK(prev / err > 2.82);
        prev = err;
      }
    }
  }
}

TEST_CASE("exact certificate: divergence form degenerates exactly at n=1") {
  SymmetryVerdict v = symmetry_certificate(Rational(1));
  CHECK(v.verdict == SymmetryKind::DegenerateN1);
  CHECK(v.matched_through == 6);
  REQUIRE(v.b2_candidates_y4.size() == 1);
  REQUIRE(v.b2_candidates_y6.size() == 1);
  // both orders select the same curvature: b^2 = 2/15
  CHECK(v.b2_candidates_y4[0] == Rational(2, 15));
  CHECK(v.b2_candidates_y6[0] == Rational(2, 15));
  CHECK(v.closed_form_defined);
  CHECK(v.closed_form_b2_y4 == Rational(2, 15));
  CHECK(v.closed_form_y4_matches);
  // the recorded compact y^6 expression disagrees with the exact series
  CHECK(v.closed_form_b2_y6 == Rational(8, 245));
  CHECK_FALSE(v.closed_form_y6_matches);
}

TEST_CASE("certificate curvature matches the shooting datum at n=1") {
  // the scale-invariant origin datum of the touchdown profile squares to
  // the exact certificate root 2/15
  Profile p = shoot_fbp_profile(ProblemParams{1.0, 1, 2, 6.0});
  const double d = p.second_deriv_origin;
  CHECK(d * d == doctest::Approx(2.0 / 15.0).epsilon(1e-6));
}

TEST_CASE("exact certificate: generic n is not symmetric") {
  {
    SymmetryVerdict v = symmetry_certificate(Rational(1, 2));
    CHECK(v.verdict == SymmetryKind::NotSymmetric);
    CHECK(v.b2_candidates_y4.empty());  // y^4 root is negative: -8/81
    REQUIRE(v.b2_candidates_y6.size() == 1);
    CHECK(v.b2_candidates_y6[0] == Rational(1, 9));
  }
  {
    SymmetryVerdict v = symmetry_certificate(Rational(4, 5));
    CHECK(v.verdict == SymmetryKind::NotSymmetric);
    CHECK(v.matched_through == 4);
    REQUIRE(v.b2_candidates_y4.size() == 1);
    REQUIRE(v.b2_candidates_y6.size() == 1);
    CHECK(v.b2_candidates_y4[0] == Rational(25, 432));
    CHECK(v.b2_candidates_y6[0] == Rational(25, 204));
    CHECK(v.closed_form_y4_matches);
    CHECK_FALSE(v.closed_form_y6_matches);
  }
  {
    SymmetryVerdict v = symmetry_certificate(Rational(6, 5));
    CHECK(v.verdict == SymmetryKind::NotSymmetric);
    CHECK(v.b2_candidates_y4[0] == Rational(25, 117));
    CHECK(v.b2_candidates_y6[0] == Rational(25, 169));
  }
}

TEST_CASE("exact certificate: coincidence point n=2/3 forces the trivial root") {
  SymmetryVerdict v = symmetry_certificate(Rational(2, 3));
  CHECK(v.verdict == SymmetryKind::DegenerateCoincidence);
  CHECK(v.b2_candidates_y4.empty());
  CHECK(v.closed_form_defined);
  CHECK(v.closed_form_b2_y4 == Rational(0));
}

TEST_CASE("scaling zero-mode of the general-n operator") {
  for (double n : {0.5, 1.0}) {
    Profile p = shoot_fbp_profile(ProblemParams{n, 1, 2, 6.0});
    auto psi = zero_eigenfunction_general_n(p);  // throws on negativity
    REQUIRE(psi.size() == p.grid.size());
    CHECK(psi[0] > 0);
    // discretized operator nearly annihilates it, relative to a generic
    // comparison function
    CHECK(zero_mode_residual(p, 100) < 5e-3);
    CHECK(zero_mode_residual(p, 200) < 5e-3);
  }
}
