#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "io.hpp"

namespace bubble::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

// Runs a command body, mapping exceptions onto exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const std::exception& e) {
    err << "run failed: " << e.what() << '\n';
    return exit_runtime;
  }
}

Json params_json(const Parameters& p) {
  return Json{{"ca", p.ca}, {"we", p.we}, {"mu", p.mu}, {"gamma", p.gamma}, {"gamma0", p.gamma0}};
}

Parameters params_from_json(const Json& j) {
  Parameters p = make_parameters(j.at("ca").get<double>(), j.at("we").get<double>(),
                                 j.at("mu").get<double>(), j.at("gamma").get<double>(),
                                 j.at("gamma0").get<double>());
  return p;
}

Json fit_json(const std::optional<DecayFit>& fit, DecayWindow window) {
  Json j;
  if (fit) {
    j["slope"] = fit->slope;
    j["sup_envelope"] = fit->sup_envelope;
    j["amplitude"] = fit->amplitude;
  } else {
    j["slope"] = nullptr;
    j["sup_envelope"] = 0.0;
    j["equilibrium"] = true;
  }
  j["window"] = Json::array({window.lo, window.hi});
  return j;
}

Json oracle_report_json(const OracleReport& report) {
  Json table = Json::array();
  for (std::size_t i = 0; i < report.t.size(); ++i) {
    table.push_back(Json{{"t", report.t[i]},
                         {"simulated", report.simulated[i]},
                         {"oracle", report.oracle[i]},
                         {"difference", report.difference[i]}});
  }
  return Json{{"sup_diff", report.sup_diff}, {"table", std::move(table)}};
}

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

DecayWindow parse_window(const std::string& text) {
  const auto kv = KeyValueFile::parse("window = " + text);
  const auto w = kv.numbers("window");
  if (w.size() != 2 || !(w[0] < w[1])) throw InputError("window must be 'lo,hi' with lo < hi");
  return {w[0], w[1]};
}

}  // namespace

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = run_config(KeyValueFile::load(config_path));
    const Grid grid(cfg.k, cfg.n);
    const State initial = make_initial_data(grid, cfg.params, cfg.initial);

    SampleSpec sampling;
    sampling.cadence = cfg.output.cadence;
    sampling.snapshot_times = cfg.output.snapshots;
    const Trajectory traj = run(initial, grid, cfg.params, cfg.integrator, sampling);

    const fs::path dir(cfg.output.directory);
    fs::create_directories(dir);
    const int prec = cfg.output.precision;
    write_timeseries((dir / "timeseries.csv").string(), traj.records, prec);
    write_history((dir / "history.csv").string(), traj.history, prec);
    for (const auto& snap : traj.snapshots) {
      write_snapshot((dir / ("snapshot_" + format_time(snap.t) + ".csv")).string(), snap.state, grid, prec);
    }

    double max_residual = 0.0;
    for (const auto& rec : traj.records) max_residual = std::max(max_residual, std::abs(rec.energy_residual));

    Json summary;
    summary["params"] = params_json(cfg.params);
    summary["grid"] = Json{{"k", cfg.k}, {"n", cfg.n}};
    summary["initial"] = Json{{"family", to_string(cfg.initial.family)},
                              {"amplitude", cfg.initial.amplitude},
                              {"support", cfg.initial.support},
                              {"shape", cfg.initial.shape}};
    summary["integrator"] = Json{{"scheme", to_string(cfg.integrator.scheme)},
                                 {"cfl", cfg.integrator.cfl},
                                 {"theta", cfg.integrator.viscous_theta},
                                 {"accepted_steps", traj.accepted_steps},
                                 {"rejected_steps", traj.rejected_steps}};
    summary["final_time"] = traj.final_state.t;
    summary["final_Q"] = traj.records.back().Q;
    summary["energy"] = Json{{"max_residual", max_residual}, {"E0_initial", traj.records.front().E0}};
    if (cfg.analysis.fit_window) {
      summary["fit"] = fit_json(fit_decay(traj.records, *cfg.analysis.fit_window), *cfg.analysis.fit_window);
    }
    if (cfg.analysis.oracle) {
      const OracleReport report = oracle_compare(traj, cfg.params);
      summary["oracle"] = Json{{"sup_diff", report.sup_diff}};
      write_json(dir / "oracle_report.json", oracle_report_json(report));
    }
    if (cfg.analysis.e2_identity) {
      const E2IdentityCheck e2 = check_e2_identity(initial, grid, cfg.params, cfg.integrator);
      summary["e2_identity"] = Json{{"consistent_variant", std::string(1, e2.consistent)},
                                    {"step", e2.step},
                                    {"dE2_varA_dt", e2.dE2a_dt},
                                    {"dE2_varB_dt", e2.dE2b_dt},
                                    {"dissipation", e2.dissipation},
                                    {"source", e2.source},
                                    {"residual_varA", e2.residual_a},
                                    {"residual_varB", e2.residual_b}};
    }
    write_json(dir / "summary.json", summary);
    out << "wrote " << traj.records.size() << " samples to " << dir.string() << '\n';
    return int(exit_ok);
  });
}

int cmd_decay_fit(const std::string& csv_path, const std::string& window,
                  const std::optional<std::string>& summary_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DecayWindow w = parse_window(window);
    const auto records = read_timeseries(csv_path, {"t", "Q"});
    std::optional<DecayFit> fit;
    try {
      fit = fit_decay(records, w);
    } catch (const std::domain_error& e) {
      throw InputError(e.what());
    }
    if (fit) {
      out << "slope " << format_number(fit->slope, 17) << '\n';
      out << "sup_envelope " << format_number(fit->sup_envelope, 17) << '\n';
    } else {
      out << "equilibrium: Q vanishes on the window\n";
    }
    const fs::path target =
        summary_path ? fs::path(*summary_path) : fs::path(csv_path).parent_path() / "summary.json";
    Json summary = fs::exists(target) ? read_json(target) : Json::object();
    summary["fit"] = fit_json(fit, w);
    write_json(target, summary);
    return int(exit_ok);
  });
}

int cmd_oracle_check(const std::string& run_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir(run_dir);
    if (!fs::exists(dir / "history.csv")) throw InputError("missing history: no history.csv in '" + run_dir + "'");
    const auto history = read_history((dir / "history.csv").string());
    const auto records = read_timeseries((dir / "timeseries.csv").string(), {"t", "boundary_density"});
    const Json summary = read_json(dir / "summary.json");
    const Parameters params = params_from_json(summary.at("params"));

    std::vector<double> t, trace;
    for (const auto& rec : records) {
      t.push_back(rec.t);
      trace.push_back(rec.boundary_density);
    }
    const RadiusHistory radius(history);
    OracleReport report;
    try {
      report = oracle_compare(radius, t, trace, params);
    } catch (const std::out_of_range& e) {
      throw InputError(e.what());
    }
    write_json(dir / "oracle_report.json", oracle_report_json(report));
    out << "sup_diff " << format_number(report.sup_diff, 17) << '\n';
    return int(exit_ok);
  });
}

int cmd_sweep(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepConfig cfg = sweep_config(KeyValueFile::load(config_path));
    const fs::path dir(cfg.output.directory);
    fs::create_directories(dir);
    const std::string path = (dir / "convergence.csv").string();
    if (cfg.kind == SweepKind::truncation) {
      const auto rows = truncation_sweep(cfg.truncation, cfg.params, cfg.integrator);
      write_truncation_table(path, rows, cfg.output.precision);
      out << "wrote " << rows.size() << " truncation rows to " << path << '\n';
    } else {
      const auto rows = refinement_study(cfg.refinement, cfg.params, cfg.integrator);
      write_refinement_table(path, rows, cfg.output.precision);
      out << "wrote " << rows.size() << " refinement rows to " << path << '\n';
    }
    return int(exit_ok);
  });
}

}  // namespace bubble::cli
