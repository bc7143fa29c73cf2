#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "tfe/pdesim.hpp"

using namespace tfe;

namespace {

SimState steady_state(int cells, bool absorption) {
  ProblemParams params{1.0, 1, 2, 6.0};
  SimState s = make_sim_state(params, 1.0, std::pow(120.0, 0.25), cells);
  s.absorption = absorption;
  return s;
}

}  // namespace

TEST_CASE("absorption decay rate arithmetic") {
  CHECK(absorption_decay_rate(ProblemParams{1.0, 1, 2, 8.0}) ==
        doctest::Approx(0.4));  // N (p - p0) beta = 2/5
  CHECK(absorption_decay_rate(ProblemParams{1.0, 1, 2, 6.0}) ==
        doctest::Approx(0.0));
}

TEST_CASE("trivial equilibrium persists") {
  SimState s = steady_state(128, true);
  std::fill(s.v.begin(), s.v.end(), 0.0);
  step_rescaled_tfe(s, 0.05);
  for (double x : s.v) CHECK(x == 0.0);
  CHECK(lyapunov_monitor(s) == 0.0);
}

TEST_CASE("steady profile persists without absorption") {
  SimState s = steady_state(512, false);
  const std::vector<double> f = s.v;
  const double m0 = s.mass();
  double lyap = lyapunov_monitor(s);
  for (int k = 0; k < 100; ++k) {
    step_rescaled_tfe(s, 0.01);
    CHECK(s.last_mass_residual < 1e-10);
    const double ly = lyapunov_monitor(s);
    CHECK(ly > lyap - 1e-8);  // gradient-flow trend
    lyap = ly;
  }
  CHECK(std::abs(s.mass() - m0) < 1e-10);
  double drift = 0;
  for (size_t i = 0; i < s.v.size(); ++i)
    drift = std::max(drift, std::abs(s.v[i] - f[i]));
  // relaxation to the discrete steady state: O(h^2) at this resolution
  CHECK(drift < 2e-3);
  // even symmetry preserved exactly by the symmetric stencil
  const int M = int(s.v.size());
  double asym = 0;
  for (int i = 0; i < M / 2; ++i)
    asym = std::max(asym, std::abs(s.v[i] - s.v[M - 1 - i]));
  CHECK(asym < 1e-12);
}

TEST_CASE("critical absorption strictly drains mass") {
  SimState s = steady_state(256, true);
  double m = s.mass();
  for (int k = 0; k < 20; ++k) {
    step_rescaled_tfe(s, 0.01);
    const double mn = s.mass();
    CHECK(mn < m);
    CHECK(s.last_mass_residual < 1e-9);
    m = mn;
  }
}

TEST_CASE("regularization robustness") {
  // halving eps moves the amplitude at tau=5 by well under 1%
  double amps[2];
  for (int j = 0; j < 2; ++j) {
    SimState s = steady_state(256, true);
    s.eps *= (j == 0 ? 1.0 : 0.5);
    while (s.tau < 5.0 - 1e-9) step_rescaled_tfe(s, 0.01);
    amps[j] = s.amplitude();
  }
  CHECK(std::abs(amps[1] - amps[0]) / amps[0] < 0.01);
}

TEST_CASE("critical run follows the slow decay law") {
  SimTrace tr = run_critical_experiment(60.0, 512, 0.01);
  CHECK(tr.max_mass_residual < 1e-8);
  // fitted decay exponent over the final decade within 10% of -1/5
  const double slope = final_decade_exponent(tr);
  CHECK(std::abs(slope + 0.2) < 0.02);
  // compensated amplitude slowly varying: drift < 20% over the decade
  double cmin = 1e30, cmax = 0;
  for (const auto& r : tr.rows) {
    if (r.tau < 6.0) continue;
    const double comp = r.b_amp * std::pow(r.tau, 0.2);
    cmin = std::min(cmin, comp);
    cmax = std::max(cmax, comp);
  }
  CHECK((cmax - cmin) / cmin < 0.2);
  // second-rescaling shape collapse within 10% sup-norm
  CHECK(tr.final_shape_distance < 0.1);
  // trace invariants
  for (size_t k = 1; k < tr.rows.size(); ++k)
    CHECK(tr.rows[k].tau > tr.rows[k - 1].tau);
}

TEST_CASE("supercritical run settles onto the steady profile") {
  SimTrace tr = run_supercritical_experiment(8.0, 25.0, 512, 0.01);
  CHECK(tr.max_mass_residual < 1e-8);
  // mass converges to a positive limit
  const double m_end = tr.rows.back().mass;
  CHECK(m_end > 0);
  double m_20 = 0;
  for (const auto& r : tr.rows)
    if (r.tau >= 20.0 && m_20 == 0) m_20 = r.mass;
  CHECK(std::abs(m_end - m_20) / m_end < 1e-3);
  // mass monotone decreasing
  for (size_t k = 1; k < tr.rows.size(); ++k)
    CHECK(tr.rows[k].mass <= tr.rows[k - 1].mass + 1e-12);
  // sup-distance to the mass-matched steady profile decreasing across
  // checkpoints (it plateaus at the discretization offset late in the run)
  auto dist_at = [&](double tau) {
    for (size_t k = 0; k < tr.rows.size(); ++k)
      if (tr.rows[k].tau >= tau) return tr.profile_distance[k];
    return tr.profile_distance.back();
  };
  CHECK(dist_at(2.5) > dist_at(5.0));
  CHECK(dist_at(5.0) > dist_at(25.0));
  // Lyapunov monitor non-decreasing after tau = 5 within 1e-6 per unit tau
  for (size_t k = 1; k < tr.rows.size(); ++k) {
    if (tr.rows[k - 1].tau < 5.0) continue;
    const double dt = tr.rows[k].tau - tr.rows[k - 1].tau;
    CHECK(tr.rows[k].lyapunov >= tr.rows[k - 1].lyapunov - 1e-6 * dt);
  }
  CHECK_THROWS(run_supercritical_experiment(5.0, 1.0));  // not supercritical
}
