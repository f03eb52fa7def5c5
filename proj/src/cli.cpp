#include "chsys/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "chsys/config.hpp"
#include "chsys/equivalence.hpp"
#include "chsys/friedrichs.hpp"
#include "chsys/harness.hpp"
#include "chsys/inequality_probe.hpp"
#include "chsys/io.hpp"

#ifndef CHSYS_VERSION
#define CHSYS_VERSION "0.0.0"
#endif

namespace chsys {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string snapshot_name(std::size_t step) {
  std::ostringstream ss;
  ss << "snapshot_" << std::setw(8) << std::setfill('0') << step;
  return ss.str();
}

int simulate(const std::string& config_path, const std::string& output_override, std::ostream& out) {
  RunConfig cfg = load_config(config_path);
  if (!output_override.empty()) cfg.output_directory = output_override;
  const std::string started = utc_now();
  const State initial = make_initial_state(cfg);
  const DyadicFilterBank bank = build_filters(cfg.n_modes, cfg.integrator.filter);
  const BoundsReport bounds =
      evaluate_bounds(initial.m, initial.n, cfg.model.alpha, cfg.model.gamma, cfg.harness, bank);
  const RunResult result = run(initial, cfg.model, cfg.integrator, cfg.monitor);

  const fs::path dir = cfg.output_directory;
  fs::create_directories(dir / "snapshots");
  write_series(result.series, dir / "series.csv");
  json snaps = json::array();
  for (const Snapshot& s : result.snapshots) {
    const std::string name = snapshot_name(s.step);
    write_snapshot(s, dir / "snapshots" / (name + ".txt"));
    write_snapshot_grid(s, dir / "snapshots" / (name + "_grid.csv"));
    snaps.push_back({{"step", s.step}, {"t", s.t}, {"spectral", "snapshots/" + name + ".txt"},
                     {"grid", "snapshots/" + name + "_grid.csv"}});
  }

  json manifest = {
      {"tool", "chsys"},
      {"version", CHSYS_VERSION},
      {"command", "simulate"},
      {"config", config_to_json(cfg)},
      {"started_at", started},
      {"status", to_string(result.status)},
      {"diagnostic", result.diagnostic},
      {"steps", result.dt_history.size()},
      {"t_final", result.t_final},
      {"cumulative_integrals",
       {{"blowup_integral_thm15", json_number(result.monitor.cumulative_integral)},
        {"blowup_integral_thm17", json_number(result.monitor.cumulative_integral_17)}}},
      {"bounds", bounds_to_json(bounds)},
      {"files", {{"series", "series.csv"}, {"snapshots", snaps}}},
  };
  manifest["T_star_num"] = result.blowup_time ? json_number(*result.blowup_time) : json(nullptr);
  if (result.status == RunStatus::blowup_detected && result.blowup_time) {
    // The lower bounds hold for the true constant C only; a violation calibrates C.
    const bool crit = *result.blowup_time >= bounds.T_star_lower_critical;
    const bool noncrit = *result.blowup_time >= bounds.T_prime_lower_noncritical;
    manifest["calibration"] = {{"critical_bound_respected", crit}, {"noncritical_bound_respected", noncrit}};
  }
  manifest["finished_at"] = utc_now();
  write_text_atomic(dir / "manifest.json", manifest.dump(2) + "\n");

  out << "status " << to_string(result.status) << "\n";
  out << "t_final " << g17(result.t_final) << "\n";
  out << "steps " << result.dt_history.size() << "\n";
  if (result.blowup_time) out << "T_star_num " << g17(*result.blowup_time) << "\n";
  out << "output " << dir.string() << "\n";
  switch (result.status) {
    case RunStatus::completed: return kExitOk;
    case RunStatus::blowup_detected: return kExitBlowup;
    case RunStatus::aborted: return kExitRuntime;
  }
  return kExitRuntime;
}

int iterate(const std::string& config_path, std::size_t K, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = load_config(config_path);
  const State initial = make_initial_state(cfg);
  const FriedrichsResult r = friedrichs_iterate(initial.m, initial.n, K, cfg.model, cfg.integrator);
  out << "k,D_sup,F_sup\n";
  for (std::size_t i = 0; i < r.iterates.size(); ++i) {
    out << r.iterates[i].k << ',' << (i < r.d_sup.size() ? g17(r.d_sup[i]) : std::string("")) << ','
        << g17(r.iterates[i].f_sup) << '\n';
  }
  fs::create_directories(cfg.output_directory);
  write_text_atomic(fs::path(cfg.output_directory) / "friedrichs.json", friedrichs_to_json(r).dump(2) + "\n");
  if (r.halted_at) {
    err << "iteration halted: " << r.diagnostic << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int analyze(const std::string& snapshot_path, double s, const std::string& p, const std::string& r, bool homogeneous,
            const std::string& filter, std::ostream& out) {
  const BesovParams params{s, integrability_from_string(p), summability_from_string(r), homogeneous};
  const Snapshot snap = read_snapshot(snapshot_path);
  const DyadicFilterBank bank = build_filters(snap.state.n_modes(), filter_kind_from_string(filter));
  json j = {{"snapshot", snapshot_path},
            {"t", snap.t},
            {"s", s},
            {"p", p},
            {"r", r},
            {"homogeneous", homogeneous},
            {"filter", filter},
            {"m", json_number(besov_norm(snap.state.m, params, bank))},
            {"n", json_number(besov_norm(snap.state.n, params, bank))}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

int bounds(const std::string& config_path, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  const State initial = make_initial_state(cfg);
  const DyadicFilterBank bank = build_filters(cfg.n_modes, cfg.integrator.filter);
  const BoundsReport b = evaluate_bounds(initial.m, initial.n, cfg.model.alpha, cfg.model.gamma, cfg.harness, bank);
  out << bounds_to_json(b).dump(2) << "\n";
  return kExitOk;
}

int equivalence(const std::string& config_path, double lambda, const std::string& form_name, std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  DampedForm form = cfg.model.form == ModelForm::damped_sqq ? DampedForm::sqq : DampedForm::forq;
  if (form_name == "forq") form = DampedForm::forq;
  if (form_name == "sqq") form = DampedForm::sqq;
  const EquivalenceReport rep = damping_equivalence(make_initial_state(cfg), form, lambda, cfg.integrator, cfg.monitor);
  out << "form " << (form == DampedForm::forq ? "forq" : "sqq") << "\n";
  out << "lambda " << g17(lambda) << "\n";
  out << "t_final " << g17(rep.t_final) << "\n";
  out << "steps " << rep.steps << "\n";
  out << "drift " << g17(rep.drift) << "\n";
  out << "max_discrepancy " << g17(rep.max_discrepancy) << "\n";
  out << "discrepancy_exp2 " << g17(rep.discrepancy_exp2) << "\n";
  out << "status " << to_string(rep.direct_status) << " " << to_string(rep.nonlocal_status) << "\n";
  const bool ok = rep.direct_status == RunStatus::completed && rep.nonlocal_status == RunStatus::completed;
  return ok ? kExitOk : kExitRuntime;
}

int probe(std::size_t trials, std::uint64_t seed, std::size_t n_modes, const std::string& filter, std::ostream& out) {
  const DyadicFilterBank bank = build_filters(n_modes, filter_kind_from_string(filter));
  const auto corpus = probe_corpus(n_modes, trials, seed);
  const ProbeParams params;
  out << "probe,trials,c_emp,all_finite\n";
  for (auto kind : {ProbeKind::moser, ProbeKind::endpoint, ProbeKind::log_interp, ProbeKind::real_interp,
                    ProbeKind::commutator}) {
    const ProbeReport rep = inequality_probe(kind, corpus, params, bank);
    out << to_string(kind) << ',' << rep.ratios.size() << ',' << g17(rep.c_emp) << ','
        << (rep.all_finite ? "true" : "false") << '\n';
  }
  return kExitOk;
}

int continuity(const std::string& config_path, const std::vector<double>& deltas, std::uint64_t seed,
               std::ostream& out) {
  const RunConfig cfg = load_config(config_path);
  const ContinuityReport rep = continuity_probe(make_initial_state(cfg), deltas, cfg.model, cfg.integrator, seed);
  out << "delta,distance_minus,distance_plus,flagged\n";
  for (const auto& e : rep.entries) {
    out << g17(e.delta) << ',' << g17(e.distance_minus) << ',' << g17(e.distance_plus) << ','
        << (e.flagged ? "true" : "false") << '\n';
  }
  out << "monotone " << (rep.monotone ? "true" : "false") << "\n";
  out << "slope_minus " << (rep.slope_minus ? g17(*rep.slope_minus) : "nan") << "\n";
  out << "slope_plus " << (rep.slope_plus ? g17(*rep.slope_plus) : "nan") << "\n";
  return rep.baseline_status == RunStatus::completed ? kExitOk : kExitRuntime;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and analysis toolkit for the non-isospectral two-component cubic Camassa-Holm system",
               "chsys"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CHSYS_VERSION);

  std::string config, output, snapshot, p = "2", r = "1", filter = "smooth", form;
  std::size_t K = 10, trials = 100, n_modes = 128;
  std::uint64_t seed = 0;
  double s = 0.5, lambda = 1.0;
  bool homogeneous = false;
  std::vector<double> deltas;

  auto* sim = app.add_subcommand("simulate", "Integrate a configured run and write series, snapshots and manifest");
  sim->add_option("config", config, "Run configuration (JSON)")->required();
  sim->add_option("--output", output, "Override output.directory");

  auto* it = app.add_subcommand("iterate", "Run the Friedrichs iteration");
  it->add_option("config", config)->required();
  it->add_option("--k", K, "Number of linear solves")->check(CLI::PositiveNumber);

  auto* an = app.add_subcommand("analyze", "Besov norms of a spectral snapshot");
  an->add_option("snapshot", snapshot)->required();
  an->add_option("--s", s, "Regularity index");
  an->add_option("--p", p, "Integrability: 2 or inf")->check(CLI::IsMember({"2", "inf", "infinity"}));
  an->add_option("--r", r, "Summability: 1, 2 or inf")->check(CLI::IsMember({"1", "2", "inf", "infinity"}));
  an->add_flag("--homogeneous", homogeneous, "Homogeneous norm (mean removed)");
  an->add_option("--filter", filter)->check(CLI::IsMember({"smooth", "sharp"}));

  auto* bo = app.add_subcommand("bounds", "Evaluate the closed-form bounds for a configuration");
  bo->add_option("config", config)->required();

  auto* eq = app.add_subcommand("equivalence", "Damped versus rescaled nonlocal run on matched steps");
  eq->add_option("config", config)->required();
  eq->add_option("--lambda", lambda, "Damping rate")->required()->check(CLI::NonNegativeNumber);
  eq->add_option("--form", form, "forq or sqq (default from the configuration)")->check(CLI::IsMember({"forq", "sqq"}));

  auto* pr = app.add_subcommand("probe-inequalities", "Empirical constants of the functional inequalities");
  pr->add_option("--trials", trials)->check(CLI::PositiveNumber);
  pr->add_option("--seed", seed);
  pr->add_option("--n-modes", n_modes, "Grid size of the trial fields");
  pr->add_option("--filter", filter)->check(CLI::IsMember({"smooth", "sharp"}));

  auto* co = app.add_subcommand("continuity", "Data-to-solution continuity probe");
  co->add_option("config", config)->required();
  co->add_option("--deltas", deltas, "Comma-separated perturbation sizes")->delimiter(',')->required();
  co->add_option("--seed", seed, "Seed of the perturbation fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sim->parsed()) return simulate(config, output, out);
    if (it->parsed()) return iterate(config, K, out, err);
    if (an->parsed()) return analyze(snapshot, s, p, r, homogeneous, filter, out);
    if (bo->parsed()) return bounds(config, out);
    if (eq->parsed()) return equivalence(config, lambda, form, out);
    if (pr->parsed()) return probe(trials, seed, n_modes, filter, out);
    if (co->parsed()) return continuity(config, deltas, seed == 0 ? 7 : seed, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime failure: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << app.help();
  return kExitValidation;
}

}  // namespace chsys
