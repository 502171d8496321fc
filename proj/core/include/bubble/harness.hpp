#pragma once

#include <optional>
#include <vector>

#include "bubble/integrator.hpp"
#include "bubble/model.hpp"

namespace bubble {

/// Domain-size sweep: the same initial data, cut off to each domain, compared
/// on a fixed observation window [0, window] x [0, t_obs].
struct SweepSpec {
  InitialDataSpec base;
  std::vector<double> domains;  // strictly increasing
  double window = 1.0;          // N
  double t_obs = 1.0;
  double dx = 0.05;
  int samples = 60;             // observation samples over [0, t_obs]

  void validate() const;
};

struct TruncationRow {
  double k_lo = 0.0;
  double k_hi = 0.0;
  double u_diff = 0.0;          // L2(0, N) at t_obs
  double v_diff = 0.0;          // L2(0, N) of 1/rho at t_obs
  double R_diff = 0.0;          // sup over [0, t_obs]
  double return_time = 0.0;     // first possible echo from x = k_lo back at x = N
  double pre_return_diff = 0.0; // max u/v/R difference on samples before return_time
};

/// Runs every domain with a common time step, so that the runs agree to
/// rounding until the outer wall can influence the window.
std::vector<TruncationRow> truncation_sweep(const SweepSpec& spec, const Parameters& params,
                                            const IntegratorConfig& config);

/// Round-trip acoustic travel time between x = window and x = k, using for
/// each cell the largest characteristic speed rho r^2 c seen during the run.
double reflection_return_time(const Grid& grid, double window, const std::vector<double>& max_speed);

struct RefinementSpec {
  InitialDataSpec base;
  double domain = 1.0;
  std::vector<int> levels;  // cell counts, each twice the previous
  double t_obs = 1.0;

  void validate() const;
};

struct RefinementRow {
  int cells = 0;
  double dx = 0.0;
  double err_u = 0.0;
  double err_rho = 0.0;
  double err_R = 0.0;
  // Observed order against the next finer level; infinity when both errors
  // vanish, NaN on the finest two levels' last row.
  double order_u = 0.0;
  double order_rho = 0.0;
  double order_R = 0.0;
};

/// Errors of each level against the finest at t_obs. dt follows the CFL
/// condition, so it halves with dx.
std::vector<RefinementRow> refinement_study(const RefinementSpec& spec, const Parameters& params,
                                            const IntegratorConfig& config);

double observed_order(double coarse_error, double fine_error);

struct StabilityReport {
  double eta = 0.0;
  double phi0 = 0.0;
  std::optional<double> max_ratio;  // max Phi(t) / Phi(0), absent when Phi(0) = 0
  std::vector<double> t;
  std::vector<double> phi;
};

/// Base data versus base data plus eta * pulse_profile(x; support, shape)
/// in the velocity. Phi = ||du||^2 + ||d(1/rho)||^2 + dR^2.
StabilityReport perturbation_stability(const Grid& grid, const InitialDataSpec& base,
                                       const Parameters& params, const IntegratorConfig& config,
                                       double eta, double support, double cadence);

double perturbation_functional(const State& a, const State& b, const Grid& grid);

/// Numerical d/dt of both E2 variants at the start of a run set against the
/// first-order energy identity evaluated on the initial state.
struct E2IdentityCheck {
  double step = 0.0;
  double dE2a_dt = 0.0;
  double dE2b_dt = 0.0;
  double dissipation = 0.0;
  double source = 0.0;
  double residual_a = 0.0;  // dE2a/dt + dissipation - source
  double residual_b = 0.0;
  char consistent = 'A';
};

E2IdentityCheck check_e2_identity(const State& initial, const Grid& grid, const Parameters& params,
                                  const IntegratorConfig& config);

}  // namespace bubble
