#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Spherical bubble in a compressible viscous liquid: simulator and diagnostics"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a simulation from a config file");
  run->add_option("config", run_config, "Config file")->required();

  std::string csv_path, window;
  std::optional<std::string> summary;
  auto* fit = app.add_subcommand("decay-fit", "Fit the decay rate of Q in a timeseries.csv");
  fit->add_option("timeseries", csv_path, "timeseries.csv")->required();
  fit->add_option("--window", window, "Fit window lo,hi")->required();
  fit->add_option("--summary", summary, "summary.json to update (default: beside the CSV)");

  std::string run_dir;
  auto* oracle = app.add_subcommand("oracle-check", "Compare the interface trace with the Duhamel formula");
  oracle->add_option("run_dir", run_dir, "Directory written by 'run'")->required();

  std::string sweep_config;
  auto* sweep = app.add_subcommand("sweep", "Domain-truncation or grid-refinement sweep");
  sweep->add_option("config", sweep_config, "Sweep config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : bubble::cli::exit_input;
  }

  using namespace bubble::cli;
  if (*run) return cmd_run(run_config, std::cout, std::cerr);
  if (*fit) return cmd_decay_fit(csv_path, window, summary, std::cout, std::cerr);
  if (*oracle) return cmd_oracle_check(run_dir, std::cout, std::cerr);
  return cmd_sweep(sweep_config, std::cout, std::cerr);
}
