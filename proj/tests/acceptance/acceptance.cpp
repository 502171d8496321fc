// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bubble/diagnostics.hpp"
#include "bubble/harness.hpp"
#include "bubble/integrator.hpp"
#include "bubble/operators.hpp"
#include "bubble/oracle.hpp"
#include "commands.hpp"

using namespace bubble;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

const Parameters reference{1.0, 10.0, 0.5, 1.4, 1.4};
constexpr double kick = 0.05;
constexpr double extent = 50.0;

InitialDataSpec family(InitialFamily f, double amplitude, double support = 1.0) {
  InitialDataSpec s;
  s.family = f;
  s.amplitude = amplitude;
  s.support = support;
  return s;
}

Trajectory reference_run(int n, double t_end) {
  const Grid g(extent, n);
  IntegratorConfig cfg;
  cfg.t_end = t_end;
  SampleSpec sampling;
  sampling.cadence = 0.1;
  return run(make_initial_data(g, reference, family(InitialFamily::radius_kick, kick)), g, reference, cfg,
             sampling);
}

// Reference ladder shared by criteria 2-5 and 10.
const std::vector<int> ladder{256, 512, 1024};
std::map<int, Trajectory> runs;

const Trajectory& reference_at(int n) {
  auto it = runs.find(n);
  if (it == runs.end()) it = runs.emplace(n, reference_run(n, 50.0)).first;
  return it->second;
}

double relative_residual(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& rec : traj.records) m = std::max(m, std::abs(rec.energy_residual));
  return m / traj.records.front().E0;
}

double dissipation_mismatch(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& rec : traj.records) {
    m = std::max(m, std::abs(rec.D_nodal - rec.D) / std::max(rec.D, 1e-30));
  }
  return m;
}

// Observed orders between consecutive ladder levels.
std::vector<double> orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) out.push_back(observed_order(errors[i], errors[i + 1]));
  return out;
}

std::string join(const std::vector<double>& xs, const char* format) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + fmt(format, xs[i]);
  return s;
}

Verdict equilibrium_fixed_point() {
  double worst = 0.0;
  for (Scheme scheme : {Scheme::semi_implicit, Scheme::explicit_rk2}) {
    const Grid g(extent, 256);
    IntegratorConfig cfg;
    cfg.scheme = scheme;
    cfg.t_end = 10.0;
    SampleSpec sampling;
    sampling.cadence = 1.0;
    const State s = run(equilibrium_state(g), g, reference, cfg, sampling).final_state;
    worst = std::max(worst, std::abs(s.R - 1.0));
    for (double u : s.u) worst = std::max(worst, std::abs(u));
    for (int j = 0; j < g.cells(); ++j) worst = std::max(worst, std::abs(s.rho(j) - 1.0));
  }
  return {worst <= 1e-12, fmt("max deviation %.3e over both schemes (tol 1e-12)", worst)};
}

Verdict energy_identity() {
  std::vector<double> res;
  for (int n : ladder) res.push_back(relative_residual(reference_at(n)));
  const auto ord = orders(res);
  const bool pass = std::all_of(ord.begin(), ord.end(), [](double o) { return o >= 1.0; }) && res.back() <= 1e-2;
  return {pass, fmt("relative residual %s; orders %s (need >= 1, final <= 1e-2)", join(res, "%.3e").c_str(),
                    join(ord, "%.2f").c_str())};
}

Verdict energy_monotone() {
  const Trajectory& traj = reference_at(ladder.back());
  const double envelope = relative_residual(traj) * traj.records.front().E0;
  double worst = -1e300;
  for (std::size_t m = 0; m + 1 < traj.records.size(); ++m) {
    worst = std::max(worst, traj.records[m + 1].E0 - traj.records[m].E0);
  }
  return {worst <= envelope, fmt("max E0 increment %.3e vs residual envelope %.3e", worst, envelope)};
}

Verdict boundary_oracle() {
  std::vector<double> sup;
  for (int n : ladder) sup.push_back(oracle_compare(reference_at(n), reference).sup_diff);
  const auto ord = orders(sup);
  const double tol = 2e-2 * kick;
  const bool pass = std::all_of(ord.begin(), ord.end(), [](double o) { return o >= 1.0; }) && sup.back() <= tol;
  return {pass, fmt("sup difference %s; orders %s (need >= 1, final <= %.1e)", join(sup, "%.3e").c_str(),
                    join(ord, "%.2f").c_str(), tol)};
}

Verdict dissipation_identity() {
  std::vector<double> gap;
  for (int n : ladder) gap.push_back(dissipation_mismatch(reference_at(n)));
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < gap.size(); ++i) decreasing = decreasing && gap[i + 1] < gap[i];
  return {decreasing && gap.back() <= 0.05,
          fmt("max relative nodal/cellwise gap %s (decreasing, final <= 0.05)", join(gap, "%.3e").c_str())};
}

Verdict decay_bound() {
  const Trajectory traj = reference_run(ladder.back(), 500.0);
  const auto fit = fit_decay(traj.records, DecayWindow{10.0, 500.0});
  if (!fit) return {false, "Q vanished on the window"};
  double at10 = 0.0;
  for (const auto& rec : traj.records) {
    if (std::abs(rec.t - 10.0) < 1e-9) at10 = (1.0 + rec.t) * rec.Q;
  }
  const bool pass = fit->slope <= -0.8 && fit->sup_envelope <= 3.0 * at10;
  return {pass, fmt("slope %.3f (need <= -0.8); sup (1+t)Q %.3e vs 3x value at t=10 %.3e; final Q %.3e", fit->slope,
                    fit->sup_envelope, 3.0 * at10, traj.records.back().Q)};
}

Verdict truncation() {
  SweepSpec spec;
  spec.base = family(InitialFamily::velocity_pulse, 0.05, 5.0);
  spec.domains = {20.0, 40.0, 80.0};
  spec.window = 5.0;
  spec.t_obs = 3.0;
  spec.dx = 1.0 / 32.0;
  Parameters p = reference;
  p.mu = 1e-3;
  const auto rows = truncation_sweep(spec, p, IntegratorConfig{});
  bool pass = true;
  std::vector<double> diffs, pre;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    diffs.push_back(rows[i].u_diff);
    pre.push_back(rows[i].pre_return_diff);
    pass = pass && rows[i].pre_return_diff <= 1e-10;
    if (i > 0) pass = pass && rows[i].u_diff <= 0.5 * rows[i - 1].u_diff;
  }
  return {pass, fmt("mu = 1e-3; u differences %s; pre-return %s (need ratio <= 0.5, <= 1e-10)",
                    join(diffs, "%.3e").c_str(), join(pre, "%.3e").c_str())};
}

Verdict perturbation() {
  const Grid g(extent, ladder.back());
  IntegratorConfig cfg;
  cfg.t_end = 20.0;
  const auto base = family(InitialFamily::radius_kick, kick);
  const StabilityReport full = perturbation_stability(g, base, reference, cfg, 1e-3, 5.0, 0.1);
  const StabilityReport half = perturbation_stability(g, base, reference, cfg, 5e-4, 5.0, 0.1);
  const double ratio = full.phi0 / half.phi0;
  const bool pass = full.max_ratio && std::isfinite(*full.max_ratio) && *full.max_ratio <= 100.0 &&
                    std::abs(ratio - 4.0) <= 0.05 * 4.0;
  return {pass, fmt("max Phi/Phi0 %.3f (<= 100); Phi0 ratio %.4f (4 +- 5%%)", full.max_ratio.value_or(NAN), ratio)};
}

Verdict unit_values() {
  const Parameters p = reference;
  const Parameters g2{1.0, 10.0, 0.5, 2.0, 1.4};
  const Grid grid(2.0, 8);
  const double devs[] = {
      std::abs(enthalpy_H(1.0, p)),
      std::abs(potential_P(1.0, p)),
      std::abs(potential_P_prime(1.0, p)),
      std::abs(enthalpy_H(2.0, g2) - 0.5),
      std::abs(bubble_pressure(1.0, p) - (0.5 * p.ca + 2.0 / p.we)),
      std::abs(interface_total_stress(equilibrium_state(grid), p) + 0.5 * p.ca),
  };
  const double worst = *std::max_element(std::begin(devs), std::end(devs));
  return {worst <= 1e-12, fmt("max deviation %.3e (tol 1e-12)", worst)};
}

Verdict damped_oscillation() {
  const auto& history = reference_at(ladder.back()).history;
  // Extremal |R-1| on each stretch between sign changes; the trailing
  // stretch is still open and is left out.
  std::vector<double> peaks;
  double peak = 0.0;
  int sign = 0;
  for (const auto& h : history) {
    const double d = h.R - 1.0;
    const int s = (d > 0.0) - (d < 0.0);
    if (s != 0 && sign != 0 && s != sign) {
      peaks.push_back(peak);
      peak = 0.0;
    }
    if (s != 0) sign = s;
    peak = std::max(peak, std::abs(d));
  }
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < peaks.size(); ++i) decreasing = decreasing && peaks[i + 1] < peaks[i];
  const bool pass = peaks.size() >= 2 && decreasing;
  const std::vector<double> shown(peaks.begin(), peaks.begin() + std::min<std::size_t>(peaks.size(), 5));
  return {pass, fmt("%zu sign changes, extremal amplitudes %s%s", peaks.size(), join(shown, "%.3e").c_str(),
                    peaks.size() > 5 ? ", ..." : "")};
}

Verdict e2_variant() {
  const fs::path dir = fs::temp_directory_path() / "bubble_acceptance_e2";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "e2.cfg";
  std::ofstream(cfg) << "params.ca = 1\nparams.we = 10\nparams.mu = 0.5\nparams.gamma = 1.4\nparams.gamma0 = 1.4\n"
                        "grid.k = 50\ngrid.n = 1024\n"
                        "initial.family = velocity-pulse\ninitial.amplitude = 0.05\ninitial.support = 5\n"
                        "integrator.t_end = 0.1\noutput.cadence = 0.1\nanalysis.oracle = false\n"
                        "output.directory = "
                     << (dir / "out").string() << '\n';
  std::ostringstream out, err;
  if (bubble::cli::cmd_run(cfg.string(), out, err) != 0) return {false, "run failed: " + err.str()};
  std::ifstream in(dir / "out" / "summary.json");
  const auto e2 = nlohmann::json::parse(in).at("e2_identity");
  fs::remove_all(dir);
  const double a = std::abs(e2.at("residual_varA").get<double>());
  const double b = std::abs(e2.at("residual_varB").get<double>());
  const std::string chosen = e2.at("consistent_variant").get<std::string>();
  const double win = std::min(a, b), lose = std::max(a, b);
  return {win <= 0.1 * lose, fmt("summary.json records variant %s; |residual| A %.3e, B %.3e (winner <= 0.1x loser)",
                                 chosen.c_str(), a, b)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"equilibrium fixed point", equilibrium_fixed_point},
      {"energy identity", energy_identity},
      {"E0 monotonicity", energy_monotone},
      {"boundary ODE oracle", boundary_oracle},
      {"dissipation identity", dissipation_identity},
      {"decay bound", decay_bound},
      {"truncation convergence", truncation},
      {"perturbation stability", perturbation},
      {"unit formula values", unit_values},
      {"damped oscillation", damped_oscillation},
      {"E2 variant resolution", e2_variant},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
