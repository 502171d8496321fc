#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "bubble/diagnostics.hpp"
#include "bubble/model.hpp"

namespace bubble {

enum class Scheme { explicit_rk2, semi_implicit };

Scheme parse_scheme(const std::string& name);
std::string to_string(Scheme scheme);

struct IntegratorConfig {
  Scheme scheme = Scheme::semi_implicit;
  double cfl = 0.5;
  double dt_max = std::numeric_limits<double>::infinity();
  double t_end = 0.0;
  double viscous_theta = 0.5;  // weight of the new time level in the viscous flux
  int max_halvings = 8;

  void validate() const;
};

/// Raised when a step loses positivity of density or radius, or produces
/// non-finite values.
class StepFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Acoustic limit cfl dx / (rho rbar^2 c) over cells; explicit mode adds the
/// viscous limit dx^2 / (2 mu rho^2 rbar^4). Capped by dt_max.
double stable_dt(const State& state, const Geometry& geo, const Grid& grid,
                 const IntegratorConfig& config, const Parameters& params);

/// Two-stage Heun update of (u, v, R).
State step_explicit(const State& state, double dt, const Grid& grid, const Parameters& params);

/// Drift-kick-drift update: v and R are advanced half a step to freeze the
/// geometry, the velocity solves a tridiagonal system with the viscous flux
/// weighted by theta at the new level, then v and R take the full step with
/// the time-averaged velocity.
State step_semi_implicit(const State& state, double dt, const Grid& grid, const Parameters& params,
                         double theta);

State step(const State& state, double dt, const Grid& grid, const Parameters& params,
           const IntegratorConfig& config);

struct SampleSpec {
  double cadence = 1.0;
  std::vector<double> snapshot_times;
};

struct HistoryPoint {
  double t;
  double R;
};

struct Snapshot {
  double t;
  State state;
};

struct Trajectory {
  std::vector<DiagnosticsRecord> records;
  std::vector<HistoryPoint> history;  // every accepted step
  std::vector<Snapshot> snapshots;
  State final_state;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/// Called at every sample time with the state and its geometry.
using Observer = std::function<void(const State&, const Geometry&)>;

/// Integrates to config.t_end. Step sizes are clipped so that sample and
/// snapshot times are hit exactly. Throws StepFailure once the halving
/// budget is exhausted.
Trajectory run(const State& initial, const Grid& grid, const Parameters& params,
               const IntegratorConfig& config, const SampleSpec& samples,
               const Observer& observer = {});

}  // namespace bubble
