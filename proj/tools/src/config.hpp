#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubble/diagnostics.hpp"
#include "bubble/harness.hpp"
#include "bubble/integrator.hpp"
#include "bubble/model.hpp"

namespace bubble::cli {

/// Bad config or input file. Maps to exit status 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `section.key = value` text. Blank lines and `#` comments are ignored.
class KeyValueFile {
 public:
  static KeyValueFile parse(const std::string& text);
  static KeyValueFile load(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

  std::string text(const std::string& key) const;  // throws on missing key
  double number(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;  // comma-separated
  std::vector<int> integers(const std::string& key) const;

  double number_or(const std::string& key, double fallback) const;
  int integer_or(const std::string& key, int fallback) const;
  bool flag_or(const std::string& key, bool fallback) const;
  std::string text_or(const std::string& key, const std::string& fallback) const;

  /// Throws InputError naming the first key outside `known`.
  void reject_unknown(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::string> values_;
};

struct OutputSpec {
  double cadence = 0.1;
  std::vector<double> snapshots;
  std::string directory = ".";
  int precision = 17;
};

struct AnalysisSpec {
  std::optional<DecayWindow> fit_window;
  bool oracle = true;
  bool e2_identity = true;
};

struct RunConfig {
  Parameters params;
  double k = 1.0;
  int n = 4;
  InitialDataSpec initial;
  IntegratorConfig integrator;
  OutputSpec output;
  AnalysisSpec analysis;
};

enum class SweepKind { truncation, refinement };

struct SweepConfig {
  SweepKind kind = SweepKind::truncation;
  Parameters params;
  IntegratorConfig integrator;
  SweepSpec truncation;
  RefinementSpec refinement;
  OutputSpec output;
};

/// Every key either config kind may contain.
const std::vector<std::string>& known_keys();

RunConfig run_config(const KeyValueFile& file);
SweepConfig sweep_config(const KeyValueFile& file);

Parameters read_parameters(const KeyValueFile& file);

}  // namespace bubble::cli
