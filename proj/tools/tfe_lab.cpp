// Command-line laboratory for the degenerate fourth-order similarity
// problem: profile shooting, kernel sequences, spectra, symmetry
// certificates, slow-decay constants, interface oscillations, and rescaled
// PDE runs.  Every subcommand writes its artifacts plus a manifest with
// checksums into an isolated output directory.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfe/centre.hpp"
#include "tfe/io.hpp"
#include "tfe/orbits.hpp"
#include "tfe/pdesim.hpp"
#include "tfe/profiles.hpp"
#include "tfe/spectral.hpp"
#include "tfe/symmetry.hpp"

using nlohmann::json;
using namespace tfe;

namespace {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

std::string out_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("TFE_LAB_OUT")) return env;
  return "./out";
}

// Flat-JSON config file values fill in options not given on the command
// line; unknown keys are rejected.  Precedence: CLI > config > defaults.
class ConfigBinder {
 public:
  template <class T>
  void bind(CLI::Option* opt, const std::string& key, T* var) {
    entries_.push_back({key, opt, [var](const json& v) { *var = v.get<T>(); }});
  }

  // Applies keys for the active subcommand only; anything else is unknown.
  void apply(const json& cfg, const CLI::App* active) const {
    const auto owned = active->get_options();
    auto mine = [&owned](const CLI::Option* o) {
      return std::find(owned.begin(), owned.end(), o) != owned.end();
    };
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
      bool known = false;
      for (const auto& e : entries_) {
        if (e.key != it.key() || !mine(e.opt)) continue;
        known = true;
        if (e.opt->count() == 0) e.set(it.value());
      }
      require(known, "unknown config key: " + it.key());
    }
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* opt;
    std::function<void(const json&)> set;
  };
  std::vector<Entry> entries_;
};

std::string profile_csv(const Profile& p) {
  std::vector<std::vector<double>> rows;
  rows.reserve(p.grid.size());
  for (size_t i = 0; i < p.grid.size(); ++i)
    rows.push_back({p.grid[i], p.values[i], p.d1[i], p.d2[i], p.d3[i]});
  return io::csv_table({"y", "F", "dF", "d2F", "d3F"}, rows);
}

io::PlotSeries profile_series(const Profile& p, const std::string& label) {
  return {label, p.grid, p.values};
}

json profile_summary(const Profile& p) {
  return {{"interface_a", p.interface_a},
          {"mass", p.mass},
          {"second_deriv_origin", p.second_deriv_origin},
          {"zero_count", p.zero_count}};
}

std::string rat(const Rational& r) { return to_string(r); }

json rat_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(rat(r));
  return a;
}

// ---------------------------------------------------------------------------
// Subcommand bodies.  Each receives the manifest and its output directory.

void run_profile_fbp(io::Manifest& man, const std::string& dir, double n) {
  Profile p = shoot_fbp_profile(ProblemParams{n, 1, 2, 6.0});
  man.add_artifact(dir, "profile.csv", profile_csv(p));
  man.add_artifact(dir, "profile.svg",
                   io::render_svg("free-boundary profile, n = " +
                                      io::format_double(n),
                                  "y", "F", {profile_series(p, "")}));
  man.set_result("profile", profile_summary(p));
}

void run_profile_cp(io::Manifest& man, const std::string& dir, double n) {
  Profile p = shoot_cp_profile(n);
  man.add_artifact(dir, "profile.csv", profile_csv(p));
  man.add_artifact(dir, "profile.svg",
                   io::render_svg("oscillatory profile, n = " +
                                      io::format_double(n),
                                  "y", "F", {profile_series(p, "")}));
  man.set_result("profile", profile_summary(p));
}

void run_kernel(io::Manifest& man, const std::string& dir, double tol) {
  auto [p, bundle] = fundamental_kernel(tol);
  man.add_artifact(dir, "kernel.csv", profile_csv(p));
  man.add_artifact(dir, "kernel.svg",
                   io::render_svg("fundamental kernel", "y", "F",
                                  {profile_series(p, "")}));
  man.set_result("bundle", json{{"c1", bundle.c1},
                                {"c2", bundle.c2},
                                {"A1", bundle.A1},
                                {"A2", bundle.A2},
                                {"s0", bundle.s0}});
  man.set_result("profile", profile_summary(p));
}

void run_kernel_sequence(io::Manifest& man, const std::string& dir, int kmax) {
  std::vector<io::PlotSeries> series;
  json roots = json::array();
  for (int k = 1; k <= kmax; ++k) {
    Profile p = fbp_kernel_sequence(k);
    man.add_artifact(dir, "kernel_" + std::to_string(k) + ".csv",
                     profile_csv(p));
    series.push_back(profile_series(p, "k = " + std::to_string(k)));
    roots.push_back(p.interface_a);
  }
  man.add_artifact(dir, "kernel_sequence.svg",
                   io::render_svg("compactly supported kernel sequence", "y",
                                  "F", series));
  man.set_result("interface_roots", roots);
}

void run_profile_explicit(io::Manifest& man, const std::string& dir, double n,
                          int N, int m) {
  require(n == 1.0, "closed-form profile requires n = 1");
  Profile p = (m == 2) ? explicit_profile_n1(N, 1.0)
                       : explicit_profile_2m_n1(m, N);
  man.add_artifact(dir, "profile.csv", profile_csv(p));
  man.add_artifact(dir, "profile.svg",
                   io::render_svg("closed-form profile, N = " +
                                      std::to_string(N),
                                  "y", "F", {profile_series(p, "")}));
  man.set_result("c0", ProblemParams{n, N, m, 6.0}.c0());
  man.set_result("profile", profile_summary(p));
}

void run_spectrum(io::Manifest& man, const std::string& dir, int N, int kmax,
                  int grid) {
  Spectrum s = polynomial_eigenfunctions(N, kmax);
  json j;
  j["params"] = {{"n", s.params.n},
                 {"N", s.params.N},
                 {"m", s.params.m},
                 {"p", s.params.p}};
  j["eigenvalues"] = s.eigenvalues;
  j["eigenfunctions"] = s.eigenfunctions;
  j["b0"] = s.b0;
  j["omega_N"] = s.omega_N;
  man.add_artifact(dir, "spectrum.json", j.dump(2) + "\n");
  man.set_result("discrete_eigenvalues",
                 discrete_eigenvalues_n1(N, grid, int(s.eigenvalues.size())));
}

void run_symmetry(io::Manifest& man, const std::string& dir,
                  const std::string& n_str) {
  Rational n;
  try {
    n = Rational(n_str);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse rational: " + n_str);
  }
  require(n > 0, "mobility exponent must be positive");
  SymmetryVerdict v = symmetry_certificate(n);
  json j;
  j["n"] = rat(v.n);
  j["matched_through"] = v.matched_through;
  j["residual_y4"] = rat_list(v.residual_y4);
  j["residual_y6"] = rat_list(v.residual_y6);
  j["b2_candidates_y4"] = rat_list(v.b2_candidates_y4);
  j["b2_candidates_y6"] = rat_list(v.b2_candidates_y6);
  j["closed_form"] = {{"defined", v.closed_form_defined},
                      {"b2_y4", rat(v.closed_form_b2_y4)},
                      {"b2_y6", rat(v.closed_form_b2_y6)},
                      {"y4_matches", v.closed_form_y4_matches},
                      {"y6_matches", v.closed_form_y6_matches}};
  j["verdict"] = symmetry_kind_name(v.verdict);
  man.add_artifact(dir, "symmetry.json", j.dump(2) + "\n");
  man.set_result("verdict", symmetry_kind_name(v.verdict));
}

void run_centre(io::Manifest& man, const std::string& dir, int N) {
  CentreCoefficients c = centre_coefficients(N);
  json j = {{"n", c.n},
            {"N", c.N},
            {"m", c.m},
            {"p0", c.p0},
            {"beta", c.beta},
            {"gamma1", c.gamma1},
            {"gamma2", c.gamma2},
            {"gamma_star", c.gamma_star},
            {"a_star", c.a_star}};
  man.add_artifact(dir, "centre.json", j.dump(2) + "\n");
  man.set_result("gamma_star", c.gamma_star);
  man.set_result("a_star", c.a_star);
}

void emit_orbit(io::Manifest& man, const std::string& dir,
                const PeriodicOrbit& orb, const std::string& title) {
  std::vector<std::vector<double>> rows;
  io::PlotSeries s{"", {}, {}};
  for (const auto& q : orb.samples) {
    rows.push_back({q[0], q[1], q[2], q[3]});
    s.x.push_back(q[0]);
    s.y.push_back(q[1]);
  }
  man.add_artifact(dir, "orbit.csv",
                   io::csv_table({"s", "phi", "dphi", "d2phi"}, rows));
  man.add_artifact(dir, "orbit.svg", io::render_svg(title, "s", "phi", {s}));
  man.set_result("period", orb.period);
  man.set_result("closure_defect", orb.closure_defect);
  man.set_result("floquet_moduli", orb.floquet_moduli);
}

void run_orbit(io::Manifest& man, const std::string& dir, double n,
               int samples) {
  Vec y0(3);
  y0 << 0.5, 0.0, 0.0;
  PeriodicOrbit orb = find_periodic_orbit(n, y0, 50.0, samples);
  emit_orbit(man, dir, orb,
             "interface oscillation, n = " + io::format_double(n));
}

void run_bifurcate(io::Manifest& man, const std::string& dir, double lo,
                   double hi, double cap) {
  BifurcationTrace tr = trace_heteroclinic_bifurcation(lo, hi, cap);
  std::vector<std::vector<double>> rows;
  io::PlotSeries s{"period T(n)", tr.n_values, tr.periods};
  for (size_t i = 0; i < tr.n_values.size(); ++i)
    rows.push_back({tr.n_values[i], tr.periods[i]});
  man.add_artifact(dir, "bifurcation.csv", io::csv_table({"n", "T"}, rows));
  man.add_artifact(dir, "bifurcation.svg",
                   io::render_svg("orbit period toward the heteroclinic limit",
                                  "n", "T", {s}));
  man.set_result("n_h_lo", tr.n_h_lo);
  man.set_result("n_h_hi", tr.n_h_hi);
  man.set_result("n_h_estimate", tr.n_h_estimate);
  man.set_result("period_cap", tr.period_cap);
}

void emit_sim(io::Manifest& man, const std::string& dir, const SimTrace& tr) {
  std::vector<std::vector<double>> rows;
  io::PlotSeries amp{"sup |v|", {}, {}};
  for (const auto& r : tr.rows) {
    rows.push_back(
        {r.tau, r.b_amp, r.b_supp, r.mass, r.lyapunov, r.fitted_exponent});
    amp.x.push_back(r.tau);
    amp.y.push_back(r.b_amp);
  }
  man.add_artifact(
      dir, "trace.csv",
      io::csv_table(
          {"tau", "b_amp", "b_supp", "mass", "lyapunov", "fitted_exponent"},
          rows));
  std::vector<std::vector<double>> snap;
  const SimState& st = tr.final_state;
  for (size_t i = 0; i < st.v.size(); ++i)
    snap.push_back({st.cell(int(i)), st.v[i]});
  man.add_artifact(dir, "snapshot.csv", io::csv_table({"y", "v"}, snap));
  man.add_artifact(dir, "trace.svg",
                   io::render_svg("rescaled amplitude history", "tau",
                                  "sup |v|", {amp}));
  man.set_result("max_mass_residual", tr.max_mass_residual);
}

void run_sim_critical(io::Manifest& man, const std::string& dir,
                      double tau_max, int cells, double dtau) {
  SimTrace tr = run_critical_experiment(tau_max, cells, dtau);
  emit_sim(man, dir, tr);
  man.set_result("final_decade_exponent", final_decade_exponent(tr));
  man.set_result("final_shape_distance", tr.final_shape_distance);
}

void run_sim_supercritical(io::Manifest& man, const std::string& dir, double p,
                           double tau_max, int cells, double dtau) {
  SimTrace tr = run_supercritical_experiment(p, tau_max, cells, dtau);
  emit_sim(man, dir, tr);
  man.set_result("final_profile_distance", tr.profile_distance.back());
  man.set_result("final_mass", tr.rows.back().mass);
}

// Presets: parameter sweeps fan out to concurrent workers; each profile
// lands in its own subdirectory and the overlay plot at the preset root.
void run_preset_figure1(io::Manifest& man, const std::string& dir) {
  const std::vector<std::pair<std::string, double>> cases = {
      {"n-0.25", 0.25}, {"n-0.5", 0.5}, {"n-0.75", 0.75}, {"n-1", 1.0}};
  std::vector<std::future<Profile>> jobs;
  for (const auto& [name, n] : cases)
    jobs.push_back(std::async(std::launch::async, [n] {
      return shoot_fbp_profile(ProblemParams{n, 1, 2, 6.0});
    }));
  std::vector<io::PlotSeries> series;
  json table = json::array();
  for (size_t i = 0; i < cases.size(); ++i) {
    Profile p = jobs[i].get();
    // profiles are already normalized to F(0) = 1
    man.add_artifact(dir, cases[i].first + "/profile.csv", profile_csv(p));
    series.push_back(
        profile_series(p, "n = " + io::format_double(cases[i].second)));
    table.push_back({{"n", cases[i].second},
                     {"second_deriv_origin", p.second_deriv_origin},
                     {"interface_a", p.interface_a}});
  }
  man.add_artifact(dir, "overlay.svg",
                   io::render_svg("normalized free-boundary profiles", "y",
                                  "F", series));
  man.set_result("profiles", table);
}

void run_preset_figure3(io::Manifest& man, const std::string& dir) {
  const std::vector<std::pair<std::string, double>> cases = {
      {"n-0", 0.0}, {"n-0.2", 0.2}, {"n-0.5", 0.5}, {"n-1", 1.0},
      {"n-1.5", 1.5}};
  std::vector<std::future<Profile>> jobs;
  for (const auto& [name, n] : cases)
    jobs.push_back(
        std::async(std::launch::async, [n] { return shoot_cp_profile(n); }));
  std::vector<io::PlotSeries> series;
  std::vector<std::vector<double>> table;
  for (size_t i = 0; i < cases.size(); ++i) {
    Profile p = jobs[i].get();
    man.add_artifact(dir, cases[i].first + "/profile.csv", profile_csv(p));
    series.push_back(
        profile_series(p, "n = " + io::format_double(cases[i].second)));
    table.push_back({cases[i].second, p.second_deriv_origin});
  }
  man.add_artifact(dir, "shooting_table.csv",
                   io::csv_table({"n", "d2F0"}, table));
  man.add_artifact(dir, "overlay.svg",
                   io::render_svg("oscillatory profiles", "y", "F", series));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for degenerate fourth-order similarity "
               "profiles and their rescaled dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_flag;
  app.add_option("--config", config_path, "flat JSON config file")
      ->configurable(false);
  app.add_option("--out", out_flag, "output directory (default ./out, or "
                                    "TFE_LAB_OUT)");

  // Per-subcommand parameters with defaults.
  double n_fbp = 1.0, n_cp = 1.0, tol_kernel = 1e-6;
  int k_seq = 5;
  double n_exp = 1.0;
  int dim_exp = 1, m_exp = 2;
  int dim_spec = 1, kmax_spec = 8, grid_spec = 400;
  std::string n_sym = "1";
  int dim_centre = 1;
  double n_orb = 1.0;
  int samples_orb = 2048;
  std::string range_bif = "1.6:1.9";
  double cap_bif = 50.0;
  double tau_crit = 60.0, dtau_crit = 0.01;
  int cells_crit = 512;
  double p_super = 8.0, tau_super = 25.0, dtau_super = 0.01;
  int cells_super = 512;
  std::string preset_name;

  ConfigBinder binder;
  auto bind = [&binder](CLI::Option* o, const std::string& key, auto* var) {
    binder.bind(o, key, var);
    return o;
  };

  auto* c_fbp = app.add_subcommand("profile-fbp",
                                   "nonnegative free-boundary profile");
  bind(c_fbp->add_option("--n", n_fbp), "n", &n_fbp);

  auto* c_cp = app.add_subcommand("profile-cp",
                                  "oscillatory whole-line profile");
  bind(c_cp->add_option("--n", n_cp), "n", &n_cp);

  auto* c_ker = app.add_subcommand("kernel", "linear fundamental kernel");
  bind(c_ker->add_option("--tol", tol_kernel), "tol", &tol_kernel);

  auto* c_seq = app.add_subcommand("kernel-sequence",
                                   "compactly supported kernel family");
  bind(c_seq->add_option("--k", k_seq), "k", &k_seq);

  auto* c_exp = app.add_subcommand("profile-explicit", "closed-form profile");
  bind(c_exp->add_option("--n", n_exp), "n", &n_exp);
  bind(c_exp->add_option("--dim", dim_exp), "dim", &dim_exp);
  bind(c_exp->add_option("--m", m_exp), "m", &m_exp);

  auto* c_spec = app.add_subcommand("spectrum", "linearized-operator spectrum");
  bind(c_spec->add_option("--dim", dim_spec), "dim", &dim_spec);
  bind(c_spec->add_option("--kmax", kmax_spec), "kmax", &kmax_spec);
  bind(c_spec->add_option("--grid", grid_spec), "grid", &grid_spec);

  auto* c_sym = app.add_subcommand("symmetry-check",
                                   "exact symmetric-form certificate");
  bind(c_sym->add_option("--n", n_sym), "n", &n_sym);

  auto* c_cen = app.add_subcommand("centre", "slow-decay constants");
  bind(c_cen->add_option("--dim", dim_centre), "dim", &dim_centre);

  auto* c_orb = app.add_subcommand("orbit", "periodic interface oscillation");
  bind(c_orb->add_option("--n", n_orb), "n", &n_orb);
  bind(c_orb->add_option("--samples", samples_orb), "samples", &samples_orb);

  auto* c_orbx = app.add_subcommand("orbit-exact",
                                    "closed-form n = 1 oscillation");
  bind(c_orbx->add_option("--samples", samples_orb), "samples", &samples_orb);

  auto* c_bif = app.add_subcommand("bifurcate",
                                   "period sweep toward the heteroclinic "
                                   "limit");
  bind(c_bif->add_option("--range", range_bif), "range", &range_bif);
  bind(c_bif->add_option("--period-cap", cap_bif), "period-cap", &cap_bif);

  auto* c_crit = app.add_subcommand("simulate-critical",
                                    "rescaled run at the critical absorption "
                                    "exponent");
  bind(c_crit->add_option("--tau-max", tau_crit), "tau-max", &tau_crit);
  bind(c_crit->add_option("--cells", cells_crit), "cells", &cells_crit);
  bind(c_crit->add_option("--dtau", dtau_crit), "dtau", &dtau_crit);

  auto* c_sup = app.add_subcommand("simulate-supercritical",
                                   "rescaled run above the critical "
                                   "absorption exponent");
  bind(c_sup->add_option("--p", p_super), "p", &p_super);
  bind(c_sup->add_option("--tau-max", tau_super), "tau-max", &tau_super);
  bind(c_sup->add_option("--cells", cells_super), "cells", &cells_super);
  bind(c_sup->add_option("--dtau", dtau_super), "dtau", &dtau_super);

  auto* c_pre = app.add_subcommand("preset", "figure reproduction bundles");
  c_pre->add_option("name", preset_name, "figure-1 | figure-3")->required();

  // let --config / --out appear after the subcommand
  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto t0 = std::chrono::steady_clock::now();
  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();

  try {
    if (!config_path.empty()) {
      json cfg = json::parse(io::read_file(config_path));
      require(cfg.is_object(), "config file must hold a flat JSON object");
      binder.apply(cfg, cmd);
    }
  } catch (const json::exception& e) {
    fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ValidationError& e) {
    fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  }

  const std::string dir =
      out_root(out_flag) + "/" +
      (name == "preset" ? "preset-" + preset_name : name);

  json cfg{{"subcommand", name}, {"out", dir}};
  io::Manifest man(cfg);
  auto finish = [&](int code) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    man.write(dir, secs);
    return code;
  };

  try {
    if (name == "profile-fbp") {
      require(n_fbp > 0 && n_fbp < 3, "profile-fbp needs 0 < n < 3");
      cfg["n"] = n_fbp;
      man = io::Manifest(cfg);
      run_profile_fbp(man, dir, n_fbp);
    } else if (name == "profile-cp") {
      require(n_cp >= 0 && n_cp < kOscillatoryLimit,
              "profile-cp needs 0 <= n below the oscillatory limit");
      cfg["n"] = n_cp;
      man = io::Manifest(cfg);
      run_profile_cp(man, dir, n_cp);
    } else if (name == "kernel") {
      require(tol_kernel > 0 && tol_kernel < 1e-2, "tol in (0, 1e-2)");
      cfg["tol"] = tol_kernel;
      man = io::Manifest(cfg);
      run_kernel(man, dir, tol_kernel);
    } else if (name == "kernel-sequence") {
      require(k_seq >= 1 && k_seq <= 12, "k in [1, 12]");
      cfg["k"] = k_seq;
      man = io::Manifest(cfg);
      run_kernel_sequence(man, dir, k_seq);
    } else if (name == "profile-explicit") {
      require(dim_exp >= 1, "dim >= 1");
      require(m_exp >= 2, "m >= 2");
      cfg["n"] = n_exp;
      cfg["dim"] = dim_exp;
      cfg["m"] = m_exp;
      man = io::Manifest(cfg);
      run_profile_explicit(man, dir, n_exp, dim_exp, m_exp);
    } else if (name == "spectrum") {
      require(dim_spec >= 1, "dim >= 1");
      require(kmax_spec >= 0 && kmax_spec % 2 == 0, "kmax even and >= 0");
      require(grid_spec >= 16, "grid >= 16");
      cfg["dim"] = dim_spec;
      cfg["kmax"] = kmax_spec;
      cfg["grid"] = grid_spec;
      man = io::Manifest(cfg);
      run_spectrum(man, dir, dim_spec, kmax_spec, grid_spec);
    } else if (name == "symmetry-check") {
      cfg["n"] = n_sym;
      man = io::Manifest(cfg);
      run_symmetry(man, dir, n_sym);
    } else if (name == "centre") {
      require(dim_centre >= 1, "dim >= 1");
      cfg["dim"] = dim_centre;
      man = io::Manifest(cfg);
      run_centre(man, dir, dim_centre);
    } else if (name == "orbit") {
      require(n_orb > 0 && n_orb < kOscillatoryLimit,
              "orbit needs 0 < n below the oscillatory limit");
      require(samples_orb >= 8, "samples >= 8");
      cfg["n"] = n_orb;
      cfg["samples"] = samples_orb;
      man = io::Manifest(cfg);
      run_orbit(man, dir, n_orb, samples_orb);
    } else if (name == "orbit-exact") {
      require(samples_orb >= 8, "samples >= 8");
      cfg["samples"] = samples_orb;
      man = io::Manifest(cfg);
      emit_orbit(man, dir, exact_orbit_n1(samples_orb),
                 "closed-form oscillation, n = 1");
    } else if (name == "bifurcate") {
      double lo = 0, hi = 0;
      const auto colon = range_bif.find(':');
      require(colon != std::string::npos, "--range must be lo:hi");
      try {
        lo = std::stod(range_bif.substr(0, colon));
        hi = std::stod(range_bif.substr(colon + 1));
      } catch (const std::exception&) {
        throw ValidationError("cannot parse range: " + range_bif);
      }
      require(0 < lo && lo < hi && hi < 3, "range needs 0 < lo < hi < 3");
      require(cap_bif > 0, "period cap must be positive");
      cfg["range"] = range_bif;
      cfg["period-cap"] = cap_bif;
      man = io::Manifest(cfg);
      run_bifurcate(man, dir, lo, hi, cap_bif);
    } else if (name == "simulate-critical") {
      require(tau_crit > 0, "tau-max > 0");
      require(cells_crit >= 32 && cells_crit % 2 == 0, "cells even, >= 32");
      require(dtau_crit > 0, "dtau > 0");
      cfg["tau-max"] = tau_crit;
      cfg["cells"] = cells_crit;
      cfg["dtau"] = dtau_crit;
      man = io::Manifest(cfg);
      run_sim_critical(man, dir, tau_crit, cells_crit, dtau_crit);
    } else if (name == "simulate-supercritical") {
      require(p_super > 6.0, "supercritical run needs p above the critical "
                             "exponent 6");
      require(tau_super > 0, "tau-max > 0");
      require(cells_super >= 32 && cells_super % 2 == 0, "cells even, >= 32");
      require(dtau_super > 0, "dtau > 0");
      cfg["p"] = p_super;
      cfg["tau-max"] = tau_super;
      cfg["cells"] = cells_super;
      cfg["dtau"] = dtau_super;
      man = io::Manifest(cfg);
      run_sim_supercritical(man, dir, p_super, tau_super, cells_super,
                            dtau_super);
    } else if (name == "preset") {
      require(preset_name == "figure-1" || preset_name == "figure-3",
              "preset must be figure-1 or figure-3");
      cfg["name"] = preset_name;
      man = io::Manifest(cfg);
      if (preset_name == "figure-1")
        run_preset_figure1(man, dir);
      else
        run_preset_figure3(man, dir);
    }
  } catch (const ValidationError& e) {
    fprintf(stderr, "invalid parameters: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    man.set_diagnostic(e.what());
    fprintf(stderr, "numerical failure: %s\n", e.what());
    return finish(3);
  }
  return finish(0);
}
