#pragma once

#include <span>
#include <vector>

#include "bubble/integrator.hpp"
#include "bubble/model.hpp"

namespace bubble {

/// Radius samples at every accepted step, strictly increasing in time.
class RadiusHistory {
 public:
  RadiusHistory(std::vector<double> t, std::vector<double> R);
  explicit RadiusHistory(std::span<const HistoryPoint> points);

  std::span<const double> times() const { return t_; }
  std::span<const double> radii() const { return R_; }
  std::size_t size() const { return t_.size(); }
  double front() const { return t_.front(); }
  double back() const { return t_.back(); }

 private:
  std::vector<double> t_;
  std::vector<double> R_;
};

/// Integrand of the interface damping exponent, p_b(R) - (2/we)/R.
double damping_rate(double R, const Parameters& params);

/// exp{-(gamma/mu) int_tau^t damping_rate(R(s)) ds}, trapezoid on the history
/// with linear interpolation inside an interval.
double damping_factor(const RadiusHistory& history, double tau, double t, const Parameters& params);

/// Duhamel solution of the interface ODE for (rho~ R^2)^(-gamma) at every
/// history time, using the two-time integrating factor. Exact in the damping
/// with interval-mean rate and source.
std::vector<double> duhamel_boundary(const RadiusHistory& history, double init_value,
                                     const Parameters& params);

/// Same formula with the convolution read literally, S(t - tau) with S
/// anchored at the history start. Evaluated at the requested times; O(M K).
std::vector<double> duhamel_boundary_literal(const RadiusHistory& history, double init_value,
                                             const Parameters& params,
                                             std::span<const double> eval_times);

/// Quasi-static interface value (ca/2) R^(-2 gamma) / damping_rate(R) at every
/// history time. Throws std::domain_error where damping_rate <= 0, which
/// marks a departure from the small-data regime.
std::vector<double> equilibrium_envelope(const RadiusHistory& history, const Parameters& params);

struct OracleReport {
  std::vector<double> t;
  std::vector<double> simulated;
  std::vector<double> oracle;
  std::vector<double> difference;
  double sup_diff = 0.0;
};

/// Compares sampled (rho~ R^2)^(-gamma) against the Duhamel value on the
/// sample times. The oracle starts from the first sampled trace.
OracleReport oracle_compare(const RadiusHistory& history, std::span<const double> sample_t,
                            std::span<const double> sample_trace, const Parameters& params);
OracleReport oracle_compare(const Trajectory& trajectory, const Parameters& params);

}  // namespace bubble
