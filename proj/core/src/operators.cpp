#include "bubble/operators.hpp"

#include <cmath>

namespace bubble {

double pressure(double rho, const Parameters& params) {
  return 0.5 * params.ca * std::pow(rho, params.gamma);
}

double bubble_pressure(double R, const Parameters& params) {
  return (0.5 * params.ca + 2.0 / params.we) * std::pow(R, -3.0 * params.gamma0);
}

double sound_speed(double rho, const Parameters& params) {
  return std::sqrt(params.gamma * 0.5 * params.ca * std::pow(rho, params.gamma - 1.0));
}

std::vector<double> viscous_stress(const State& state, const Geometry& geo, const Grid& grid) {
  const int n = grid.cells();
  std::vector<double> sigma(n);
  const double inv_dx = 1.0 / grid.dx();
  for (int j = 0; j < n; ++j) {
    const double flux_hi = geo.r[j + 1] * geo.r[j + 1] * state.u[j + 1];
    const double flux_lo = geo.r[j] * geo.r[j] * state.u[j];
    sigma[j] = (flux_hi - flux_lo) * inv_dx / state.v[j];
  }
  return sigma;
}

double interface_load(double R, const Parameters& params) {
  // p_b(R) - (2/we)/R, grouped so that R = 1 gives exactly ca/2.
  const double gas = std::pow(R, -3.0 * params.gamma0);
  return 0.5 * params.ca * gas + (2.0 / params.we) * (gas - 1.0 / R);
}

double interface_total_stress(const State& state, const Parameters& params) {
  const double R = state.R;
  return -interface_load(R, params) + 2.0 * params.mu * state.u[0] / R;
}

double interface_density(const State& state) {
  return 1.5 * state.rho(0) - 0.5 * state.rho(1);
}

double boundary_stress_residual(const State& state, const Geometry& geo, const Grid& grid,
                                const Parameters& params) {
  const double rho0 = interface_density(state);
  const double ux0 = (-3.0 * state.u[0] + 4.0 * state.u[1] - state.u[2]) / (2.0 * grid.dx());
  const double R = geo.r[0];
  const double lhs = pressure(rho0, params) - params.mu * rho0 * R * R * ux0;
  return lhs - interface_load(R, params);
}

StressField stress_field(const State& state, const Geometry& geo, const Grid& grid,
                         const Parameters& params) {
  StressField s;
  s.sigma = viscous_stress(state, geo, grid);
  s.total.resize(s.sigma.size());
  for (std::size_t j = 0; j < s.sigma.size(); ++j) {
    s.total[j] = -pressure(state.rho(j), params) + params.mu * s.sigma[j];
  }
  s.interface = interface_total_stress(state, params);
  return s;
}

std::vector<double> momentum_rhs(const Geometry& geo, const StressField& stress, const Grid& grid) {
  const int n = grid.cells();
  std::vector<double> du(n + 1, 0.0);
  const double inv_dx = 1.0 / grid.dx();
  du[0] = geo.r[0] * geo.r[0] * (stress.total[0] - stress.interface) * 2.0 * inv_dx;
  for (int j = 1; j < n; ++j) {
    du[j] = geo.r[j] * geo.r[j] * (stress.total[j] - stress.total[j - 1]) * inv_dx;
  }
  return du;
}

std::vector<double> continuity_rhs(const State& state, const Geometry& geo, const Grid& grid) {
  const int n = grid.cells();
  std::vector<double> dv(n);
  const double inv_dx = 1.0 / grid.dx();
  for (int j = 0; j < n; ++j) {
    dv[j] = (geo.r[j + 1] * geo.r[j + 1] * state.u[j + 1] - geo.r[j] * geo.r[j] * state.u[j]) * inv_dx;
  }
  return dv;
}

Rhs evaluate_rhs(const State& state, const Geometry& geo, const Grid& grid, const Parameters& params) {
  Rhs rhs;
  const StressField stress = stress_field(state, geo, grid, params);
  rhs.du_dt = momentum_rhs(geo, stress, grid);
  rhs.dv_dt = continuity_rhs(state, geo, grid);
  rhs.dR_dt = state.u[0];
  return rhs;
}

Rhs evaluate_rhs(const State& state, const Grid& grid, const Parameters& params) {
  return evaluate_rhs(state, radii(state, grid), grid, params);
}

}  // namespace bubble
