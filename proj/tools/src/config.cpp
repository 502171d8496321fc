#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace bubble::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw InputError("invalid number for key '" + key + "': '" + s + "'");
  }
  return value;
}

int parse_int(const std::string& key, const std::string& s) {
  int value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw InputError("invalid integer for key '" + key + "': '" + s + "'");
  }
  return value;
}

// Rewrites a component's std::invalid_argument so that the message names the
// config key the bad value came from.
template <typename F>
void validated(const std::string& section, F&& check) {
  try {
    check();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    const auto open = msg.find('\'');
    const auto close = open == std::string::npos ? open : msg.find('\'', open + 1);
    if (close != std::string::npos) {
      msg.insert(open + 1, section + ".");
    } else {
      msg = "invalid " + section + " block: " + msg;
    }
    throw InputError(msg);
  }
}

OutputSpec read_output(const KeyValueFile& f) {
  OutputSpec out;
  out.cadence = f.number_or("output.cadence", out.cadence);
  if (!(out.cadence > 0.0)) throw InputError("invalid value for key 'output.cadence': must be > 0");
  if (f.has("output.snapshots")) out.snapshots = f.numbers("output.snapshots");
  out.directory = f.text_or("output.directory", out.directory);
  out.precision = f.integer_or("output.precision", out.precision);
  if (out.precision < 1 || out.precision > 17) {
    throw InputError("invalid value for key 'output.precision': must be in [1,17]");
  }
  return out;
}

IntegratorConfig read_integrator(const KeyValueFile& f, bool need_t_end) {
  IntegratorConfig c;
  try {
    if (f.has("integrator.scheme")) c.scheme = parse_scheme(f.text("integrator.scheme"));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid value for key 'integrator.scheme': ") + e.what());
  }
  c.cfl = f.number_or("integrator.cfl", c.cfl);
  c.dt_max = f.number_or("integrator.dt_max", c.dt_max);
  c.viscous_theta = f.number_or("integrator.theta", c.viscous_theta);
  c.max_halvings = f.integer_or("integrator.max_halvings", c.max_halvings);
  if (need_t_end) c.t_end = f.number("integrator.t_end");
  validated("integrator", [&] { c.validate(); });
  return c;
}

InitialDataSpec read_initial(const KeyValueFile& f) {
  InitialDataSpec s;
  try {
    s.family = parse_family(f.text("initial.family"));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid value for key 'initial.family': ") + e.what());
  }
  s.amplitude = f.number_or("initial.amplitude", s.amplitude);
  s.support = f.number_or("initial.support", s.support);
  s.shape = f.integer_or("initial.shape", s.shape);
  return s;
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::string& text) {
  KeyValueFile f;
  std::stringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError("line " + std::to_string(line_no) + ": empty key");
    if (!f.values_.emplace(key, value).second) throw InputError("duplicate key '" + key + "'");
  }
  return f;
}

KeyValueFile KeyValueFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

std::string KeyValueFile::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw InputError("missing required key '" + key + "'");
  return it->second;
}

double KeyValueFile::number(const std::string& key) const { return parse_double(key, text(key)); }

int KeyValueFile::integer(const std::string& key) const { return parse_int(key, text(key)); }

bool KeyValueFile::flag(const std::string& key) const {
  const std::string v = text(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError("invalid boolean for key '" + key + "': '" + v + "'");
}

std::vector<double> KeyValueFile::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_double(key, item));
  return out;
}

std::vector<int> KeyValueFile::integers(const std::string& key) const {
  std::vector<int> out;
  for (const auto& item : split_list(text(key))) out.push_back(parse_int(key, item));
  return out;
}

double KeyValueFile::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int KeyValueFile::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

bool KeyValueFile::flag_or(const std::string& key, bool fallback) const {
  return has(key) ? flag(key) : fallback;
}

std::string KeyValueFile::text_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? text(key) : fallback;
}

void KeyValueFile::reject_unknown(const std::vector<std::string>& known) const {
  for (const auto& [key, value] : values_) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("unknown key '" + key + "'");
    }
  }
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "params.ca",          "params.we",          "params.mu",
      "params.gamma",       "params.gamma0",      "grid.k",
      "grid.n",             "initial.family",     "initial.amplitude",
      "initial.support",    "initial.shape",      "integrator.scheme",
      "integrator.cfl",     "integrator.dt_max",  "integrator.t_end",
      "integrator.theta",   "integrator.max_halvings",
      "output.cadence",     "output.snapshots",   "output.directory",
      "output.precision",   "analysis.fit_window", "analysis.oracle",
      "analysis.e2_identity", "sweep.kind",       "sweep.domains",
      "sweep.window",       "sweep.t_obs",        "sweep.dx",
      "sweep.samples",      "sweep.domain",       "sweep.levels",
  };
  return keys;
}

Parameters read_parameters(const KeyValueFile& f) {
  Parameters p;
  p.ca = f.number("params.ca");
  p.we = f.number("params.we");
  p.mu = f.number("params.mu");
  p.gamma = f.number("params.gamma");
  p.gamma0 = f.number("params.gamma0");
  validated("params", [&] { p.validate(); });
  return p;
}

RunConfig run_config(const KeyValueFile& f) {
  f.reject_unknown(known_keys());
  for (const auto& [key, value] : f.values()) {
    if (key.rfind("sweep.", 0) == 0) throw InputError("unknown key '" + key + "' in a run config");
  }
  RunConfig c;
  c.params = read_parameters(f);
  c.k = f.number("grid.k");
  c.n = f.integer("grid.n");
  if (!(c.k > 0.0)) throw InputError("invalid value for key 'grid.k': must be > 0");
  if (c.n < 4) throw InputError("invalid value for key 'grid.n': must be >= 4");
  c.initial = read_initial(f);
  validated("initial", [&] { c.initial.validate(Grid(c.k, c.n)); });
  c.integrator = read_integrator(f, true);
  c.output = read_output(f);
  if (f.has("analysis.fit_window")) {
    const auto w = f.numbers("analysis.fit_window");
    if (w.size() != 2 || !(w[0] < w[1])) {
      throw InputError("invalid value for key 'analysis.fit_window': expected 'lo, hi' with lo < hi");
    }
    c.analysis.fit_window = DecayWindow{w[0], w[1]};
  }
  c.analysis.oracle = f.flag_or("analysis.oracle", c.analysis.oracle);
  c.analysis.e2_identity = f.flag_or("analysis.e2_identity", c.analysis.e2_identity);
  return c;
}

SweepConfig sweep_config(const KeyValueFile& f) {
  f.reject_unknown(known_keys());
  SweepConfig c;
  const std::string kind = f.text("sweep.kind");
  if (kind == "truncation") {
    c.kind = SweepKind::truncation;
  } else if (kind == "refinement") {
    c.kind = SweepKind::refinement;
  } else {
    throw InputError("invalid value for key 'sweep.kind': expected truncation or refinement");
  }
  c.params = read_parameters(f);
  c.integrator = read_integrator(f, false);
  c.output = read_output(f);
  const InitialDataSpec base = read_initial(f);
  if (c.kind == SweepKind::truncation) {
    c.truncation.base = base;
    c.truncation.domains = f.numbers("sweep.domains");
    c.truncation.window = f.number("sweep.window");
    c.truncation.t_obs = f.number("sweep.t_obs");
    c.truncation.dx = f.number("sweep.dx");
    c.truncation.samples = f.integer_or("sweep.samples", c.truncation.samples);
    validated("sweep", [&] { c.truncation.validate(); });
  } else {
    c.refinement.base = base;
    c.refinement.domain = f.number("sweep.domain");
    c.refinement.levels = f.integers("sweep.levels");
    c.refinement.t_obs = f.number("sweep.t_obs");
    validated("sweep", [&] { c.refinement.validate(); });
    validated("initial", [&] { base.validate(Grid(c.refinement.domain, c.refinement.levels.front())); });
  }
  return c;
}

}  // namespace bubble::cli
