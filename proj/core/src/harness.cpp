#include "bubble/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bubble/diagnostics.hpp"
#include "bubble/operators.hpp"

namespace bubble {

namespace {

int cells_for(double extent, double dx) {
  const double cells = extent / dx;
  const int rounded = static_cast<int>(std::lround(cells));
  if (std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw std::invalid_argument("domain extent is not a multiple of the sweep spacing dx");
  }
  return rounded;
}

struct WindowSample {
  double t;
  std::vector<double> u;
  std::vector<double> v;
  double R;
};

double l2_nodes(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  double sum = 0.0;
  const std::size_t last = a.size() - 1;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double w = (j == 0 || j == last) ? 0.5 * dx : dx;
    sum += w * (a[j] - b[j]) * (a[j] - b[j]);
  }
  return std::sqrt(sum);
}

double l2_cells(const std::vector<double>& a, const std::vector<double>& b, double dx) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) sum += dx * (a[j] - b[j]) * (a[j] - b[j]);
  return std::sqrt(sum);
}

}  // namespace

void SweepSpec::validate() const {
  if (domains.empty()) throw std::invalid_argument("sweep needs at least one domain size");
  if (!(window > 0.0)) throw std::invalid_argument("invalid parameter 'window': must be > 0");
  if (!(domains.front() > window)) {
    throw std::invalid_argument("smallest domain must exceed the observation window");
  }
  for (std::size_t i = 1; i < domains.size(); ++i) {
    if (!(domains[i] > domains[i - 1])) throw std::invalid_argument("domain sizes must increase");
  }
  if (!(t_obs > 0.0)) throw std::invalid_argument("invalid parameter 't_obs': must be > 0");
  if (!(dx > 0.0)) throw std::invalid_argument("invalid parameter 'dx': must be > 0");
  if (samples < 1) throw std::invalid_argument("invalid parameter 'samples': must be >= 1");
  for (double k : domains) (void)cells_for(k, dx);
}

double reflection_return_time(const Grid& grid, double window, const std::vector<double>& max_speed) {
  double one_way = 0.0;
  for (int j = 0; j < grid.cells(); ++j) {
    if (grid.center(j) < window) continue;
    one_way += grid.dx() / max_speed[j];
  }
  return 2.0 * one_way;
}

std::vector<TruncationRow> truncation_sweep(const SweepSpec& spec, const Parameters& params,
                                            const IntegratorConfig& config) {
  spec.validate();
  params.validate();
  const int window_cells = static_cast<int>(std::floor(spec.window / spec.dx + 1e-9));

  // Shared step size, set by the largest domain with headroom for the
  // density to evolve.
  IntegratorConfig cfg = config;
  cfg.t_end = spec.t_obs;
  {
    const Grid largest(spec.domains.back(), cells_for(spec.domains.back(), spec.dx));
    const State s = cutoff_initial_data(make_initial_data(largest, params, spec.base), largest);
    cfg.dt_max = std::min(config.dt_max, 0.8 * stable_dt(s, radii(s, largest), largest, config, params));
  }

  std::vector<std::vector<WindowSample>> runs;
  std::vector<double> return_times;
  for (double k : spec.domains) {
    const Grid grid(k, cells_for(k, spec.dx));
    const State initial = cutoff_initial_data(make_initial_data(grid, params, spec.base), grid);
    std::vector<WindowSample> samples;
    std::vector<double> max_speed(grid.cells(), 0.0);
    auto observe = [&](const State& s, const Geometry& g) {
      WindowSample w;
      w.t = s.t;
      w.u.assign(s.u.begin(), s.u.begin() + window_cells + 1);
      w.v.assign(s.v.begin(), s.v.begin() + window_cells);
      w.R = s.R;
      samples.push_back(std::move(w));
      for (int j = 0; j < grid.cells(); ++j) {
        const double rho = s.rho(j);
        const double rbar = g.cell_mean_radius(j);
        max_speed[j] = std::max(max_speed[j], rho * rbar * rbar * sound_speed(rho, params));
      }
    };
    SampleSpec sampling;
    sampling.cadence = spec.t_obs / spec.samples;
    try {
      run(initial, grid, params, cfg, sampling, observe);
    } catch (const StepFailure& e) {
      throw StepFailure("truncation sweep failed for k = " + std::to_string(k) + ": " + e.what());
    }
    runs.push_back(std::move(samples));
    return_times.push_back(reflection_return_time(grid, spec.window, max_speed));
  }

  std::vector<TruncationRow> rows;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    const auto& lo = runs[i];
    const auto& hi = runs[i + 1];
    if (lo.size() != hi.size()) throw std::logic_error("truncation sweep: sample counts differ");
    TruncationRow row;
    row.k_lo = spec.domains[i];
    row.k_hi = spec.domains[i + 1];
    row.return_time = return_times[i];
    for (std::size_t m = 0; m < lo.size(); ++m) {
      const double du = l2_nodes(lo[m].u, hi[m].u, spec.dx);
      const double dv = l2_cells(lo[m].v, hi[m].v, spec.dx);
      const double dR = std::abs(lo[m].R - hi[m].R);
      row.R_diff = std::max(row.R_diff, dR);
      if (lo[m].t < row.return_time) {
        row.pre_return_diff = std::max({row.pre_return_diff, du, dv, dR});
      }
      if (m + 1 == lo.size()) {
        row.u_diff = du;
        row.v_diff = dv;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void RefinementSpec::validate() const {
  if (levels.size() < 3) throw std::invalid_argument("refinement study needs at least 3 levels");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] != 2 * levels[i - 1]) {
      throw std::invalid_argument("refinement levels must double successively");
    }
  }
  if (!(t_obs > 0.0)) throw std::invalid_argument("invalid parameter 't_obs': must be > 0");
}

double observed_order(double coarse_error, double fine_error) {
  if (fine_error == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(coarse_error / fine_error);
}

std::vector<RefinementRow> refinement_study(const RefinementSpec& spec, const Parameters& params,
                                            const IntegratorConfig& config) {
  spec.validate();
  IntegratorConfig cfg = config;
  cfg.t_end = spec.t_obs;
  SampleSpec sampling;
  sampling.cadence = spec.t_obs;

  std::vector<State> finals;
  for (int cells : spec.levels) {
    const Grid grid(spec.domain, cells);
    const State initial = make_initial_data(grid, params, spec.base);
    finals.push_back(run(initial, grid, params, cfg, sampling).final_state);
  }

  const State& fine = finals.back();
  const int fine_cells = spec.levels.back();
  std::vector<RefinementRow> rows;
  for (std::size_t i = 0; i < finals.size(); ++i) {
    const int cells = spec.levels[i];
    const int ratio = fine_cells / cells;
    const double dx = spec.domain / cells;
    const State& s = finals[i];
    double eu = 0.0, erho = 0.0;
    for (int j = 0; j <= cells; ++j) {
      const double w = (j == 0 || j == cells) ? 0.5 * dx : dx;
      const double d = s.u[j] - fine.u[j * ratio];
      eu += w * d * d;
    }
    for (int j = 0; j < cells; ++j) {
      double v_mean = 0.0;
      for (int q = 0; q < ratio; ++q) v_mean += fine.v[j * ratio + q];
      v_mean /= ratio;
      const double d = s.rho(j) - 1.0 / v_mean;
      erho += dx * d * d;
    }
    RefinementRow row;
    row.cells = cells;
    row.dx = dx;
    row.err_u = std::sqrt(eu);
    row.err_rho = std::sqrt(erho);
    row.err_R = std::abs(s.R - fine.R);
    rows.push_back(row);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 2 < rows.size()) {
      rows[i].order_u = observed_order(rows[i].err_u, rows[i + 1].err_u);
      rows[i].order_rho = observed_order(rows[i].err_rho, rows[i + 1].err_rho);
      rows[i].order_R = observed_order(rows[i].err_R, rows[i + 1].err_R);
    } else {
      rows[i].order_u = rows[i].order_rho = rows[i].order_R = nan;
    }
  }
  return rows;
}

double perturbation_functional(const State& a, const State& b, const Grid& grid) {
  const double dx = grid.dx();
  const int n = grid.cells();
  double phi = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 0.5 * dx : dx;
    phi += w * (a.u[j] - b.u[j]) * (a.u[j] - b.u[j]);
  }
  for (int j = 0; j < n; ++j) phi += dx * (a.v[j] - b.v[j]) * (a.v[j] - b.v[j]);
  return phi + (a.R - b.R) * (a.R - b.R);
}

StabilityReport perturbation_stability(const Grid& grid, const InitialDataSpec& base,
                                       const Parameters& params, const IntegratorConfig& config,
                                       double eta, double support, double cadence) {
  if (!(eta >= 0.0)) throw std::invalid_argument("invalid parameter 'eta': must be >= 0");
  if (!(support > 0.0 && support <= grid.extent())) {
    throw std::invalid_argument("invalid parameter 'support': must lie in (0, k]");
  }
  const State a0 = make_initial_data(grid, params, base);
  State b0 = a0;
  for (int j = 0; j < grid.cells(); ++j) b0.u[j] += eta * pulse_profile(grid.node(j), support, 2);

  SampleSpec sampling;
  sampling.cadence = cadence;
  std::vector<State> sa, sb;
  run(a0, grid, params, config, sampling, [&](const State& s, const Geometry&) { sa.push_back(s); });
  run(b0, grid, params, config, sampling, [&](const State& s, const Geometry&) { sb.push_back(s); });
  if (sa.size() != sb.size()) throw std::logic_error("perturbation runs sampled differently");

  StabilityReport report;
  report.eta = eta;
  for (std::size_t m = 0; m < sa.size(); ++m) {
    report.t.push_back(sa[m].t);
    report.phi.push_back(perturbation_functional(sa[m], sb[m], grid));
  }
  report.phi0 = report.phi.front();
  if (report.phi0 > 0.0) {
    report.max_ratio = *std::max_element(report.phi.begin(), report.phi.end()) / report.phi0;
  }
  return report;
}

E2IdentityCheck check_e2_identity(const State& initial, const Grid& grid, const Parameters& params,
                                  const IntegratorConfig& config) {
  E2IdentityCheck out;
  const Geometry geo0 = radii(initial, grid);
  const double h = 0.05 * stable_dt(initial, geo0, grid, config, params);
  out.step = h;

  auto energies = [&](const State& s) {
    const Geometry g = radii(s, grid);
    return derivative_energies(s, g, evaluate_rhs(s, g, grid, params), grid, params);
  };
  const State s1 = step(initial, h, grid, params, config);
  const State s2 = step(s1, h, grid, params, config);
  const auto e0 = energies(initial);
  const auto e1 = energies(s1);
  const auto e2 = energies(s2);
  out.dE2a_dt = (-3.0 * e0.e2_a + 4.0 * e1.e2_a - e2.e2_a) / (2.0 * h);
  out.dE2b_dt = (-3.0 * e0.e2_b + 4.0 * e1.e2_b - e2.e2_b) / (2.0 * h);

  const auto terms =
      derivative_identity_terms(initial, geo0, evaluate_rhs(initial, geo0, grid, params), grid, params);
  out.dissipation = terms.dissipation;
  out.source = terms.source;
  out.residual_a = out.dE2a_dt + terms.dissipation - terms.source;
  out.residual_b = out.dE2b_dt + terms.dissipation - terms.source;
  out.consistent = std::abs(out.residual_a) <= std::abs(out.residual_b) ? 'A' : 'B';
  return out;
}

}  // namespace bubble
