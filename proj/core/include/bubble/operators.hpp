#pragma once

#include <vector>

#include "bubble/model.hpp"

namespace bubble {

/// Liquid pressure (ca/2) rho^gamma.
double pressure(double rho, const Parameters& params);

/// Bubble gas pressure (ca/2 + 2/we) R^(-3 gamma0).
double bubble_pressure(double R, const Parameters& params);

/// Sound speed of the liquid pressure law.
double sound_speed(double rho, const Parameters& params);

/// Viscous stress sigma = rho d(r^2 u)/dx at every cell.
std::vector<double> viscous_stress(const State& state, const Geometry& geo, const Grid& grid);

/// Net load on the interface from gas pressure and surface tension,
/// p_b(R) - (2/we)/R.
double interface_load(double R, const Parameters& params);

/// Total stress T = -p(rho) + mu sigma at the interface x = 0, from the
/// dynamic boundary condition plus the geometric viscous part 2 mu u/r.
double interface_total_stress(const State& state, const Parameters& params);

/// Interface trace of rho by linear extrapolation from the first two cells.
double interface_density(const State& state);

/// [(ca/2) rho^gamma - mu rho r^2 u_x] - p_b + (2/we)/R at x = 0, with
/// extrapolated traces. Vanishes when the continuum boundary condition holds.
double boundary_stress_residual(const State& state, const Geometry& geo, const Grid& grid,
                                const Parameters& params);

struct StressField {
  std::vector<double> total;   // T at cells
  std::vector<double> sigma;   // viscous stress at cells
  double interface = 0.0;      // T at x = 0
};

StressField stress_field(const State& state, const Geometry& geo, const Grid& grid,
                         const Parameters& params);

/// du/dt at nodes. Interior nodes use the staggered stress difference, the
/// interface node carries half a cell of mass, the wall node is pinned.
std::vector<double> momentum_rhs(const Geometry& geo, const StressField& stress, const Grid& grid);

/// dv/dt = d(r^2 u)/dx at cells.
std::vector<double> continuity_rhs(const State& state, const Geometry& geo, const Grid& grid);

struct Rhs {
  std::vector<double> du_dt;
  std::vector<double> dv_dt;
  double dR_dt = 0.0;
};

Rhs evaluate_rhs(const State& state, const Geometry& geo, const Grid& grid, const Parameters& params);
Rhs evaluate_rhs(const State& state, const Grid& grid, const Parameters& params);

}  // namespace bubble
