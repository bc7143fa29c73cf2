// Acceptance gate: twelve criteria, one pass/fail line each.  Every
// criterion also asserts through doctest so the suite fails loudly with the
// offending values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "tfe/centre.hpp"
#include "tfe/orbits.hpp"
#include "tfe/pdesim.hpp"
#include "tfe/profiles.hpp"
#include "tfe/spectral.hpp"
#include "tfe/symmetry.hpp"

using namespace tfe;

namespace {

void report(int idx, const std::string& name, bool ok) {
  std::printf("criterion %2d  %-42s %s\n", idx, name.c_str(),
              ok ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion " << idx << " (" << name << ")");
}

}  // namespace

TEST_CASE("1: closed-form profile residual") {
  bool ok = true;
  for (int N : {1, 2, 3}) {
    ProblemParams params{1.0, N, 2, 6.0};
    const double res = explicit_residual_sup(2, N, 1.0, params.c0());
    CHECK(res <= 1e-10);
    ok = ok && res <= 1e-10;
  }
  const double c0 = ProblemParams{1.0, 1, 2, 6.0}.c0();
  CHECK(c0 == doctest::Approx(1.0 / 120.0).epsilon(1e-15));
  ok = ok && std::abs(c0 - 1.0 / 120.0) < 1e-17;
  report(1, "closed-form profile residual", ok);
}

TEST_CASE("2: shooting matches the closed form at n=1") {
  Profile p = shoot_fbp_profile(ProblemParams{1.0, 1, 2, 6.0});
  // normalized closed form: F = (1 - (y/a)^2)^2 with a = 120^(1/4)
  double sup = 0;
  for (size_t i = 0; i < p.grid.size(); ++i) {
    const double r = p.grid[i] / p.interface_a;
    const double w = 1.0 - r * r;
    sup = std::max(sup, std::abs(p.values[i] - w * w));
  }
  const double d2 = -4.0 / std::sqrt(120.0);
  CHECK(sup < 1e-6);
  CHECK(p.second_deriv_origin == doctest::Approx(d2).epsilon(1e-8));
  CHECK(p.interface_a ==
        doctest::Approx(std::pow(120.0, 0.25)).epsilon(1e-8));
  report(2, "free-boundary shooting vs closed form",
         sup < 1e-6 && std::abs(p.second_deriv_origin - d2) < 1e-8);
}

TEST_CASE("3: oscillatory shooting data table") {
  const double n_list[5] = {0.0, 0.2, 0.5, 1.0, 1.5};
  const double d2_ref[5] = {-0.3379890, -0.3414702, -0.3490986, -0.3697143,
                            -0.4052680};
  bool ok = true;
  for (int i = 0; i < 5; ++i) {
    Profile p = shoot_cp_profile(n_list[i]);
    const double err = std::abs(p.second_deriv_origin - d2_ref[i]);
    CHECK(err < 1e-3);
    ok = ok && err < 1e-3;
  }
  report(3, "oscillatory shooting data table", ok);
}

TEST_CASE("4: discrete spectrum against the closed form") {
  bool ok = true;
  for (int N : {1, 2}) {
    std::vector<double> coarse = discrete_eigenvalues_n1(N, 200, 3);
    std::vector<double> fine = discrete_eigenvalues_n1(N, 400, 3);
    for (int j = 0; j < 3; ++j) {
      const double exact = -eigenvalue_closed_form(2, N, 2 * j);
      const double ec = std::abs(coarse[j] - exact);
      const double ef = std::abs(fine[j] - exact);
      if (j > 0) {
        const double rel = ef / std::abs(exact);
        const double order = std::log2(ec / ef);
        CHECK(rel < 0.01);
        CHECK(order >= 1.5);
        ok = ok && rel < 0.01 && order >= 1.5;
      } else {
        CHECK(ef < 0.01);
        ok = ok && ef < 0.01;
      }
    }
    // Gram matrix of the polynomial eigenfunctions, k <= 8
    Spectrum s = polynomial_eigenfunctions(N, 8);
    for (size_t a = 0; a < s.eigenfunctions.size(); ++a) {
      for (size_t b = 0; b <= a; ++b) {
        const double g =
            poly_inner_rho(s.eigenfunctions[a], s.eigenfunctions[b], N);
        const double dev = std::abs(g - (a == b ? 1.0 : 0.0));
        CHECK(dev <= 1e-8);
        ok = ok && dev <= 1e-8;
      }
    }
  }
  report(4, "discrete spectrum and eigenfunction Gram", ok);
}

TEST_CASE("5: cubic root and exact period") {
  const double theta = exact_theta_n1();
  const bool t_ok = std::abs(theta - 0.381966011250105) < 1e-9;
  CHECK(t_ok);
  PeriodicOrbit ex = exact_orbit_n1(512);
  const bool per_ok = std::abs(ex.period + 2.0 * std::log(theta)) < 1e-12 &&
                      std::abs(ex.period - 1.9248473002) < 1e-6;
  CHECK(per_ok);
  Vec y0(3);
  y0 << 0.5, 0.0, 0.0;
  PeriodicOrbit orb = find_periodic_orbit(1.0, y0, 50.0, 512);
  const bool agree_period = std::abs(orb.period - ex.period) < 1e-6;
  double sup = 0;
  for (int k = 0; k < 512; ++k)
    sup = std::max(sup, std::abs(orb.samples[k][1] - ex.samples[k][1]));
  CHECK(agree_period);
  CHECK(sup < 1e-5);
  report(5, "cubic root, period, orbit agreement",
         t_ok && per_ok && agree_period && sup < 1e-5);
}

TEST_CASE("6: orbit integral identity") {
  bool ok = true;
  for (double n : {0.5, 1.0, 1.5}) {
    Vec y0(3);
    y0 << 0.5, 0.0, 0.0;
    PeriodicOrbit orb = find_periodic_orbit(n, y0, 60.0, 16);
    const double a1 = osc_coeffs(n).a1;
    const double rel =
        std::abs(orb.int_d2phi_sq - a1 * orb.int_dphi_sq) /
        std::abs(a1 * orb.int_dphi_sq);
    CHECK(rel < 1e-6);
    ok = ok && rel < 1e-6;
  }
  report(6, "orbit integral identity", ok);
}

TEST_CASE("7: heteroclinic period blow-up bracket") {
  BifurcationTrace tr = trace_heteroclinic_bifurcation(1.6, 1.9, 50.0);
  const bool bracket_ok =
      tr.n_h_lo >= 1.7580 && tr.n_h_hi <= 1.7610 && tr.n_h_lo < tr.n_h_hi;
  CHECK(bracket_ok);
  // periods monotone increasing over the final decade of the bracket
  bool mono = true;
  const double decade_lo = tr.n_h_lo - 10.0 * (tr.n_h_hi - tr.n_h_lo);
  double prev = 0;
  for (size_t i = 0; i < tr.n_values.size(); ++i) {
    if (tr.n_values[i] < decade_lo || tr.n_values[i] > tr.n_h_lo) continue;
    if (tr.periods[i] <= prev) mono = false;
    prev = tr.periods[i];
  }
  CHECK(mono);
  report(7, "heteroclinic bracket and monotone periods", bracket_ok && mono);
}

TEST_CASE("8: oscillation-loss constants") {
  const double n_plus = 9.0 / (3.0 + std::sqrt(3.0));
  const bool n_ok = std::abs(n_plus - 1.9019238) < 1e-7;
  const double mu = 3.0 / n_plus;
  const double a1 = 3.0 * mu * mu - 6.0 * mu + 2.0;
  CHECK(n_ok);
  CHECK(std::abs(a1) < 1e-14);
  report(8, "oscillation-loss constants", n_ok && std::abs(a1) < 1e-14);
}

TEST_CASE("9: symmetric-form certificate") {
  bool ok = true;
  auto disjoint = [](const SymmetryVerdict& v) {
    for (const auto& a : v.b2_candidates_y4)
      for (const auto& b : v.b2_candidates_y6)
        if (a == b) return false;
    return true;
  };
  for (auto [p, q] : {std::pair{1, 2}, {4, 5}, {6, 5}}) {
    SymmetryVerdict v = symmetry_certificate(Rational(p, q));
    CHECK(v.verdict == SymmetryKind::NotSymmetric);
    CHECK(disjoint(v));
    ok = ok && v.verdict == SymmetryKind::NotSymmetric && disjoint(v);
  }
  SymmetryVerdict coincidence = symmetry_certificate(Rational(2, 3));
  CHECK(coincidence.verdict == SymmetryKind::DegenerateCoincidence);
  ok = ok && coincidence.verdict == SymmetryKind::DegenerateCoincidence;
  SymmetryVerdict v1 = symmetry_certificate(Rational(1));
  CHECK(v1.verdict == SymmetryKind::DegenerateN1);
  bool root_ok = v1.b2_candidates_y4.size() == 1 &&
                 v1.b2_candidates_y4 == v1.b2_candidates_y6 &&
                 v1.b2_candidates_y4[0] == Rational(2, 15);
  CHECK(root_ok);
  // |b| = sqrt(30)/15 equals the n=1 shooting magnitude 4/sqrt(120)
  const double b = std::sqrt(2.0 / 15.0);
  const bool mag_ok = std::abs(b - std::sqrt(30.0) / 15.0) < 1e-15 &&
                      std::abs(b - 4.0 / std::sqrt(120.0)) < 1e-15;
  CHECK(mag_ok);
  ok = ok && v1.verdict == SymmetryKind::DegenerateN1 && root_ok && mag_ok;
  report(9, "symmetric-form certificate", ok);
}

TEST_CASE("10: critical-absorption decay law") {
  SimTrace tr = run_critical_experiment(60.0, 512, 0.01);
  const double slope = final_decade_exponent(tr);
  const bool slope_ok = std::abs(slope + 0.2) < 0.02;  // within 10% of -1/5
  CHECK(slope_ok);
  double cmin = 1e30, cmax = 0;
  for (const auto& r : tr.rows) {
    if (r.tau < 6.0) continue;  // final decade
    const double comp = r.b_amp * std::pow(r.tau, 0.2);
    cmin = std::min(cmin, comp);
    cmax = std::max(cmax, comp);
  }
  const bool drift_ok = (cmax - cmin) / cmin < 0.2;
  CHECK(drift_ok);
  const bool mass_ok = tr.max_mass_residual < 1e-8;
  CHECK(mass_ok);
  report(10, "critical-absorption decay law",
         slope_ok && drift_ok && mass_ok);
}

TEST_CASE("11: supercritical convergence to the steady profile") {
  SimTrace tr = run_supercritical_experiment(8.0, 25.0, 512, 0.01);
  const double m_end = tr.rows.back().mass;
  double m_20 = 0;
  for (const auto& r : tr.rows)
    if (r.tau >= 20.0 && m_20 == 0) m_20 = r.mass;
  const bool mass_ok = m_end > 0 && std::abs(m_end - m_20) / m_end < 1e-3;
  CHECK(mass_ok);
  auto dist_at = [&](double tau) {
    for (size_t k = 0; k < tr.rows.size(); ++k)
      if (tr.rows[k].tau >= tau) return tr.profile_distance[k];
    return tr.profile_distance.back();
  };
  const bool dist_ok =
      dist_at(2.5) > dist_at(5.0) && dist_at(5.0) > dist_at(25.0);
  CHECK(dist_ok);
  bool lyap_ok = true;
  for (size_t k = 1; k < tr.rows.size(); ++k) {
    if (tr.rows[k - 1].tau < 5.0) continue;
    const double dt = tr.rows[k].tau - tr.rows[k - 1].tau;
    if (tr.rows[k].lyapunov < tr.rows[k - 1].lyapunov - 1e-6 * dt)
      lyap_ok = false;
  }
  CHECK(lyap_ok);
  report(11, "supercritical convergence", mass_ok && dist_ok && lyap_ok);
}

TEST_CASE("12: kernel sequence structure and limit") {
  bool ok = true;
  for (int k = 1; k <= 5; ++k) {
    Profile p = fbp_kernel_sequence(k);
    CHECK(p.zero_count == k);
    ok = ok && p.zero_count == k;
  }
  Profile p8 = fbp_kernel_sequence(8);
  const double c2 = 0.375 * std::pow(4.0, -1.0 / 3.0) * std::sqrt(3.0);
  const double ratio =
      p8.interface_a / std::pow(8.0 * M_PI / c2, 0.75);
  const bool ratio_ok = std::abs(ratio - 1.0) < 0.05;
  CHECK(ratio_ok);
  ok = ok && ratio_ok;
  // convergence to the fundamental kernel on the central window
  auto [ker, kb] = fundamental_kernel(1e-6);
  (void)kb;
  auto sup_diff = [&](const Profile& p) {
    double sup = 0;
    size_t j = 0;
    for (size_t i = 0; i < ker.grid.size() && ker.grid[i] <= 2.0; ++i) {
      while (j + 1 < p.grid.size() && p.grid[j + 1] <= ker.grid[i]) ++j;
      const double t =
          (ker.grid[i] - p.grid[j]) / (p.grid[j + 1] - p.grid[j]);
      const double v = p.values[j] * (1 - t) + p.values[j + 1] * t;
      sup = std::max(sup, std::abs(v - ker.values[i]));
    }
    return sup;
  };
  const double d3 = sup_diff(fbp_kernel_sequence(3));
  const double d5 = sup_diff(fbp_kernel_sequence(5));
  const double d7 = sup_diff(fbp_kernel_sequence(7));
  const bool conv_ok = d5 < d3 && d7 < d5;
  CHECK(conv_ok);
  report(12, "kernel sequence structure and limit", ok && conv_ok);
}
