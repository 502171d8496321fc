#pragma once

#include <string>
#include <vector>

#include "bubble/diagnostics.hpp"
#include "bubble/harness.hpp"
#include "bubble/integrator.hpp"
#include "bubble/oracle.hpp"

namespace bubble::cli {

/// Exact timeseries.csv header.
const std::string& timeseries_header();

/// Shortest round-trip decimal form, used for file names.
std::string format_time(double t);

/// %.{precision}g
std::string format_number(double value, int precision);

void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                      int precision);

/// Parses a timeseries.csv. Columns are matched by name, so files holding a
/// subset (at least t and Q) are accepted; absent fields keep their defaults.
/// Throws InputError on malformed content.
std::vector<DiagnosticsRecord> read_timeseries(const std::string& path,
                                               const std::vector<std::string>& required);

void write_history(const std::string& path, const std::vector<HistoryPoint>& history, int precision);
std::vector<HistoryPoint> read_history(const std::string& path);

/// Node rows (x, r, u, nan) interleaved with cell rows (x_center, nan, nan, rho).
void write_snapshot(const std::string& path, const State& state, const Grid& grid, int precision);

void write_truncation_table(const std::string& path, const std::vector<TruncationRow>& rows,
                            int precision);
void write_refinement_table(const std::string& path, const std::vector<RefinementRow>& rows,
                            int precision);

}  // namespace bubble::cli
