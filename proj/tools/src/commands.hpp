#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace bubble::cli {

enum ExitCode : int { exit_ok = 0, exit_input = 2, exit_runtime = 3 };

/// Each command reports progress on `out`, problems on `err`, and returns the
/// process exit status.
int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);

/// `window` is "lo,hi". The fit block is merged into `summary_path`, which
/// defaults to summary.json beside the CSV.
int cmd_decay_fit(const std::string& csv_path, const std::string& window,
                  const std::optional<std::string>& summary_path, std::ostream& out, std::ostream& err);

int cmd_oracle_check(const std::string& run_dir, std::ostream& out, std::ostream& err);

int cmd_sweep(const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace bubble::cli
