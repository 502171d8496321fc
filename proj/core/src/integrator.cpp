#include "bubble/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "bubble/operators.hpp"
#include "bubble/tridiagonal.hpp"

namespace bubble {

namespace {

void require_positive(const State& s) {
  if (!(s.R > 0.0) || !std::isfinite(s.R)) throw StepFailure("bubble radius lost positivity");
  for (double vj : s.v) {
    if (!(vj > 0.0) || !std::isfinite(vj)) throw StepFailure("density lost positivity");
  }
  for (double uj : s.u) {
    if (!std::isfinite(uj)) throw StepFailure("velocity is not finite");
  }
}

// y + h * f for the full (u, v, R) vector.
State axpy(const State& y, double h, const Rhs& f) {
  State out = y;
  for (std::size_t j = 0; j < out.u.size(); ++j) out.u[j] += h * f.du_dt[j];
  for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] += h * f.dv_dt[j];
  out.R += h * f.dR_dt;
  out.u.back() = 0.0;
  return out;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "explicit-rk2") return Scheme::explicit_rk2;
  if (name == "semi-implicit") return Scheme::semi_implicit;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::string to_string(Scheme scheme) {
  return scheme == Scheme::explicit_rk2 ? "explicit-rk2" : "semi-implicit";
}

void IntegratorConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("invalid parameter 'cfl': must be in (0,1]");
  if (!(dt_max > 0.0)) throw std::invalid_argument("invalid parameter 'dt_max': must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("invalid parameter 't_end': must be >= 0");
  }
  if (!(viscous_theta >= 0.5 && viscous_theta <= 1.0)) {
    throw std::invalid_argument("invalid parameter 'viscous_theta': must be in [0.5,1]");
  }
  if (max_halvings < 0) throw std::invalid_argument("invalid parameter 'max_halvings': must be >= 0");
}

double stable_dt(const State& state, const Geometry& geo, const Grid& grid,
                 const IntegratorConfig& config, const Parameters& params) {
  const double dx = grid.dx();
  double dt = config.dt_max;
  for (int j = 0; j < grid.cells(); ++j) {
    const double rho = state.rho(j);
    const double rbar = geo.cell_mean_radius(j);
    const double r2 = rbar * rbar;
    dt = std::min(dt, config.cfl * dx / (rho * r2 * sound_speed(rho, params)));
    if (config.scheme == Scheme::explicit_rk2) {
      dt = std::min(dt, 0.5 * dx * dx / (params.mu * rho * rho * r2 * r2));
    }
  }
  return dt;
}

State step_explicit(const State& state, double dt, const Grid& grid, const Parameters& params) {
  if (dt == 0.0) return state;
  const Rhs k1 = evaluate_rhs(state, grid, params);
  State stage = axpy(state, dt, k1);
  require_positive(stage);
  const Rhs k2 = evaluate_rhs(stage, grid, params);
  State out = state;
  for (std::size_t j = 0; j < out.u.size(); ++j) out.u[j] += 0.5 * dt * (k1.du_dt[j] + k2.du_dt[j]);
  for (std::size_t j = 0; j < out.v.size(); ++j) out.v[j] += 0.5 * dt * (k1.dv_dt[j] + k2.dv_dt[j]);
  out.R += 0.5 * dt * (k1.dR_dt + k2.dR_dt);
  out.u.back() = 0.0;
  out.t = state.t + dt;
  require_positive(out);
  return out;
}

State step_semi_implicit(const State& state, double dt, const Grid& grid, const Parameters& params,
                         double theta) {
  if (dt == 0.0) return state;
  const int n = grid.cells();
  const double dx = grid.dx();
  const double mu = params.mu;

  // Half drift freezes the geometry at t + dt/2.
  const Geometry geo0 = radii(state, grid);
  const auto dv0 = continuity_rhs(state, geo0, grid);
  State half = state;
  for (int j = 0; j < n; ++j) half.v[j] += 0.5 * dt * dv0[j];
  half.R += 0.5 * dt * state.u[0];
  require_positive(half);
  const Geometry geo = radii(half, grid);
  const auto& r = geo.r;

  // Viscous operator rows: (V u)_j = lower u_{j-1} + diag u_j + upper u_{j+1}.
  std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), force(n, 0.0);
  const double inv_dx2 = 1.0 / (dx * dx);
  {
    const double rho0 = half.rho(0);
    const double scale = 2.0 * r[0] * r[0] / dx;
    diag[0] = scale * mu * (-rho0 * r[0] * r[0] / dx - 2.0 / half.R);
    upper[0] = scale * mu * rho0 * r[1] * r[1] / dx;
    force[0] = scale * (-pressure(rho0, params) + interface_load(half.R, params));
  }
  for (int j = 1; j < n; ++j) {
    const double rho_lo = half.rho(j - 1);
    const double rho_hi = half.rho(j);
    const double r2 = r[j] * r[j];
    lower[j] = mu * r2 * rho_lo * r[j - 1] * r[j - 1] * inv_dx2;
    diag[j] = -mu * r2 * (rho_lo + rho_hi) * r2 * inv_dx2;
    upper[j] = j + 1 < n ? mu * r2 * rho_hi * r[j + 1] * r[j + 1] * inv_dx2 : 0.0;
    force[j] = r2 * (pressure(rho_lo, params) - pressure(rho_hi, params)) / dx;
  }

  std::vector<double> rhs(n), a(n), b(n), c(n);
  const double explicit_weight = 1.0 - theta;
  for (int j = 0; j < n; ++j) {
    double vu = diag[j] * state.u[j];
    if (j > 0) vu += lower[j] * state.u[j - 1];
    if (j + 1 < n) vu += upper[j] * state.u[j + 1];
    rhs[j] = state.u[j] + dt * (force[j] + explicit_weight * vu);
    a[j] = -dt * theta * lower[j];
    b[j] = 1.0 - dt * theta * diag[j];
    c[j] = -dt * theta * upper[j];
  }
  std::vector<double> u_new;
  try {
    u_new = solve_tridiagonal(a, b, c, rhs);
  } catch (const std::runtime_error& e) {
    throw StepFailure(e.what());
  }

  State out = state;
  for (int j = 0; j < n; ++j) out.u[j] = u_new[j];
  out.u[n] = 0.0;
  State mean = state;
  for (int j = 0; j <= n; ++j) mean.u[j] = 0.5 * (state.u[j] + out.u[j]);
  const auto dv = continuity_rhs(mean, geo, grid);
  for (int j = 0; j < n; ++j) out.v[j] = state.v[j] + dt * dv[j];
  out.R = state.R + dt * mean.u[0];
  out.t = state.t + dt;
  require_positive(out);
  return out;
}

State step(const State& state, double dt, const Grid& grid, const Parameters& params,
           const IntegratorConfig& config) {
  if (config.scheme == Scheme::explicit_rk2) return step_explicit(state, dt, grid, params);
  return step_semi_implicit(state, dt, grid, params, config.viscous_theta);
}

namespace {

// Dissipation rate on the mean of the two step endpoints. Endpoint
// trapezoid averaging under-resolves the acceleration layer that
// incompatible data launch at the interface, losing an order in dx.
double midpoint_dissipation(const State& a, const State& b, const Grid& grid, const Parameters& params) {
  State mid = a;
  for (std::size_t j = 0; j < mid.u.size(); ++j) mid.u[j] = 0.5 * (a.u[j] + b.u[j]);
  for (std::size_t j = 0; j < mid.v.size(); ++j) mid.v[j] = 0.5 * (a.v[j] + b.v[j]);
  mid.R = 0.5 * (a.R + b.R);
  return dissipation(mid, radii(mid, grid), grid, params).cellwise;
}

}  // namespace

Trajectory run(const State& initial, const Grid& grid, const Parameters& params,
               const IntegratorConfig& config, const SampleSpec& samples, const Observer& observer) {
  params.validate();
  config.validate();
  check_state(initial, grid);
  if (!(samples.cadence > 0.0)) throw std::invalid_argument("invalid parameter 'cadence': must be > 0");

  Trajectory traj;
  State state = initial;
  const double t0 = initial.t;
  const double t_end = t0 + config.t_end;

  std::vector<double> snapshot_times = samples.snapshot_times;
  std::sort(snapshot_times.begin(), snapshot_times.end());
  std::size_t next_snapshot = 0;
  while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] < t0) ++next_snapshot;

  long sample_index = 1;
  auto next_sample_time = [&] { return std::min(t0 + sample_index * samples.cadence, t_end); };

  Geometry geo = radii(state, grid);
  double cum_d = 0.0;
  double e0_initial = 0.0;

  auto record = [&](const State& s, const Geometry& g) {
    DiagnosticsRecord rec = evaluate_record(s, g, grid, params);
    rec.cumD = cum_d;
    if (traj.records.empty()) e0_initial = rec.E0;
    rec.energy_residual = rec.E0 + cum_d - e0_initial;
    traj.records.push_back(rec);
    if (observer) observer(s, g);
  };
  auto maybe_snapshot = [&](const State& s) {
    while (next_snapshot < snapshot_times.size() && snapshot_times[next_snapshot] <= s.t) {
      if (snapshot_times[next_snapshot] == s.t) traj.snapshots.push_back({s.t, s});
      ++next_snapshot;
    }
  };

  traj.history.push_back({state.t, state.R});
  record(state, geo);
  maybe_snapshot(state);

  constexpr double time_eps = 1e-12;
  while (state.t < t_end) {
    double target = next_sample_time();
    if (next_snapshot < snapshot_times.size()) target = std::min(target, snapshot_times[next_snapshot]);
    double dt = stable_dt(state, geo, grid, config, params);
    bool lands = false;
    if (state.t + dt >= target - time_eps * std::max(1.0, target)) {
      dt = target - state.t;
      lands = true;
    }
    State next;
    int halvings = 0;
    for (;;) {
      try {
        next = step(state, dt, grid, params, config);
        break;
      } catch (const StepFailure&) {
        ++traj.rejected_steps;
        if (++halvings > config.max_halvings) {
          throw StepFailure("step failed after exhausting dt halvings at t = " + std::to_string(state.t));
        }
        dt *= 0.5;
        lands = false;
      }
    }
    if (lands) next.t = target;
    cum_d += dt * midpoint_dissipation(state, next, grid, params);
    state = std::move(next);
    geo = radii(state, grid);
    ++traj.accepted_steps;
    traj.history.push_back({state.t, state.R});

    if (state.t >= next_sample_time()) {
      record(state, geo);
      while (t0 + sample_index * samples.cadence <= state.t + time_eps) ++sample_index;
    }
    maybe_snapshot(state);
  }
  traj.final_state = state;
  return traj;
}

}  // namespace bubble
