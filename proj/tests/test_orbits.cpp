#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "tfe/orbits.hpp"
#include "tfe/patched_flow.hpp"

using namespace tfe;

TEST_CASE("coefficients and equilibria") {
  OscCoeffs c = osc_coeffs(1.0);
  CHECK(c.mu == doctest::Approx(3.0));
  CHECK(c.a2 == doctest::Approx(6.0));
  CHECK(c.a1 == doctest::Approx(11.0));
  CHECK(c.a0 == doctest::Approx(6.0));

  // n = 1.8: mu = 5/3, mu(mu-1)(mu-2) = -10/27
  OscCoeffs c18 = osc_coeffs(1.8);
  CHECK(c18.a0 == doctest::Approx(-10.0 / 27.0).epsilon(1e-14));
  double e = osc_equilibrium(1.8);
  // equilibrium condition a0*phi + phi|phi|^-n = 0
  CHECK(std::pow(e, -1.8) == doctest::Approx(-c18.a0).epsilon(1e-14));
  CHECK_THROWS(osc_equilibrium(1.2));
}

TEST_CASE("closed-form n=1 orbit") {
  double th = exact_theta_n1();
  CHECK(((th - 2) * th - 2) * th + 1 == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(th == doctest::Approx(0.3819660112501051).epsilon(1e-13));

  PeriodicOrbit ex = exact_orbit_n1(512);
  CHECK(ex.period == doctest::Approx(1.9248473002).epsilon(1e-9));
  CHECK(ex.closure_defect < 1e-13);
  CHECK(ex.v > 0);
  CHECK(ex.samples[0][1] == doctest::Approx(0.0).epsilon(1e-14));
  // odd half-period symmetry
  int half = 256;
  for (int k : {10, 60, 200})
    CHECK(ex.samples[k + half][1] ==
          doctest::Approx(-ex.samples[k][1]).epsilon(1e-12));
  // energy identity: int (phi'')^2 = a1 * int (phi')^2 (exact here)
  CHECK(ex.int_d2phi_sq ==
        doctest::Approx(11.0 * ex.int_dphi_sq).epsilon(1e-12));
}

TEST_CASE("arch map reproduces the exact n=1 orbit data") {
  PeriodicOrbit ex = exact_orbit_n1(8);
  auto r = osc_arch(1.0, ex.v, ex.A);
  REQUIRE(r.has_value());
  CHECK(r->v1 == doctest::Approx(ex.v).epsilon(1e-8));
  CHECK(r->A1 == doctest::Approx(ex.A).epsilon(1e-7));
  CHECK(r->duration == doctest::Approx(ex.period / 2).epsilon(1e-8));
}

TEST_CASE("periodic orbit at n=1 matches the closed form") {
  Vec y0(3);
  y0 << 0.5, 0.0, 0.0;
  PeriodicOrbit orb = find_periodic_orbit(1.0, y0, 50.0, 512);
  PeriodicOrbit ex = exact_orbit_n1(512);
  CHECK(orb.period == doctest::Approx(ex.period).epsilon(1e-7));
  CHECK(orb.v == doctest::Approx(ex.v).epsilon(1e-6));
  CHECK(orb.A == doctest::Approx(ex.A).epsilon(1e-6));
  CHECK(orb.closure_defect < 1e-9);
  double sup = 0;
  for (int k = 0; k < 512; ++k)
    sup = std::max(sup, std::abs(orb.samples[k][1] - ex.samples[k][1]));
  CHECK(sup < 1e-5);
  // Floquet: trivial multiplier 1, stable orbit
  REQUIRE(orb.floquet_moduli.size() == 3);
  CHECK(orb.floquet_moduli[0] == doctest::Approx(1.0).epsilon(2e-6));
  CHECK(orb.floquet_moduli[1] < 1.0);
  CHECK(orb.floquet_moduli[2] < 1.0);
}

TEST_CASE("energy identity across n") {
  for (double n : {0.5, 1.0, 1.5}) {
    Vec y0(3);
    y0 << 0.5, 0.0, 0.0;
    PeriodicOrbit orb = find_periodic_orbit(n, y0, 60.0, 16);
    double a1 = osc_coeffs(n).a1;
    INFO("n = " << n);
    CHECK(orb.int_d2phi_sq ==
          doctest::Approx(a1 * orb.int_dphi_sq).epsilon(1e-6));
    CHECK(orb.period > 0);
  }
}

TEST_CASE("n=1.5 orbit pinned against an independent run") {
  Vec y0(3);
  y0 << 0.5, 0.0, 0.0;
  PeriodicOrbit orb = find_periodic_orbit(1.5, y0, 60.0, 16);
  CHECK(orb.period == doctest::Approx(4.864861).epsilon(2e-6));
}

TEST_CASE("basin robustness at n=1") {
  Vec ref(3);
  ref << 0.5, 0.0, 0.0;
  PeriodicOrbit orb0 = find_periodic_orbit(1.0, ref, 50.0, 8);
  double inits[5][3] = {{0.2, 0, 0},
                        {-0.4, 0.1, 0},
                        {0.05, -0.05, 0.2},
                        {1.0, 0, -0.5},
                        {0.01, 0.3, 0}};
  for (auto& in : inits) {
    Vec y0(3);
    y0 << in[0], in[1], in[2];
    PeriodicOrbit orb = find_periodic_orbit(1.0, y0, 60.0, 8);
    CHECK(std::abs(orb.v - orb0.v) < 1e-8);
    CHECK(std::abs(orb.A - orb0.A) < 1e-8);
  }
}

TEST_CASE("flow through crossings conserves the section data") {
  // run the fixed point forward two periods and confirm the recorded upward
  // crossings return to (v, A)
  PeriodicOrbit ex = exact_orbit_n1(8);
  Vec y0(3);
  y0 << 0.0, ex.v, ex.A;
  std::vector<std::array<double, 3>> ups;
  osc_flow(1.0, 0.0, y0, 2.5 * ex.period, &ups);
  REQUIRE(ups.size() >= 3);
  CHECK(ups[1][0] == doctest::Approx(ex.period).epsilon(1e-7));
  CHECK(ups[1][1] == doctest::Approx(ex.v).epsilon(1e-7));
  CHECK(ups[1][2] == doctest::Approx(ex.A).epsilon(1e-6));
}

TEST_CASE("period branch blows up near the heteroclinic value") {
  BifurcationTrace tr = trace_heteroclinic_bifurcation(1.70, 1.77, 25.0);
  REQUIRE(tr.n_values.size() >= 4);
  for (size_t i = 1; i < tr.periods.size(); ++i)
    CHECK(tr.periods[i] > tr.periods[i - 1]);
  CHECK(tr.n_h_hi - tr.n_h_lo <= 1e-4 + 1e-12);
  CHECK(tr.n_h_lo > 1.74);
  CHECK(tr.n_h_hi < 1.76);
  // log-fit extrapolation of the blow-up location
  CHECK(tr.n_h_estimate == doctest::Approx(1.758665).epsilon(5e-4));
}
