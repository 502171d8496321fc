#include "bubble/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bubble/operators.hpp"

namespace bubble {

namespace {

// Cumulative trapezoid of damping_rate over the history nodes.
std::vector<double> cumulative_rate(const RadiusHistory& h, const Parameters& params) {
  const auto t = h.times();
  const auto R = h.radii();
  std::vector<double> F(t.size(), 0.0);
  double f_prev = damping_rate(R[0], params);
  for (std::size_t m = 1; m < t.size(); ++m) {
    const double f = damping_rate(R[m], params);
    F[m] = F[m - 1] + 0.5 * (t[m] - t[m - 1]) * (f_prev + f);
    f_prev = f;
  }
  return F;
}

// Index m with t[m] <= s <= t[m+1]; s must lie in the span.
std::size_t bracket(std::span<const double> t, double s) {
  auto it = std::upper_bound(t.begin(), t.end(), s);
  if (it == t.begin()) return 0;
  std::size_t m = static_cast<std::size_t>(it - t.begin()) - 1;
  return std::min(m, t.size() - 2);
}

// Cumulative integral at an arbitrary time in the span.
double cumulative_at(const RadiusHistory& h, const std::vector<double>& F, double s,
                     const Parameters& params) {
  const auto t = h.times();
  const auto R = h.radii();
  if (t.size() == 1) return 0.0;
  const std::size_t m = bracket(t, s);
  const double w = (s - t[m]) / (t[m + 1] - t[m]);
  const double f_lo = damping_rate(R[m], params);
  const double f_hi = damping_rate(R[m + 1], params);
  const double f_s = f_lo + w * (f_hi - f_lo);
  return F[m] + 0.5 * (s - t[m]) * (f_lo + f_s);
}

double interpolate(std::span<const double> t, std::span<const double> y, double s) {
  if (t.size() == 1) return y[0];
  const std::size_t m = bracket(t, s);
  const double w = (s - t[m]) / (t[m + 1] - t[m]);
  return y[m] + w * (y[m + 1] - y[m]);
}

}  // namespace

RadiusHistory::RadiusHistory(std::vector<double> t, std::vector<double> R)
    : t_(std::move(t)), R_(std::move(R)) {
  if (t_.size() != R_.size() || t_.empty()) {
    throw std::invalid_argument("radius history: empty or mismatched series");
  }
  for (std::size_t m = 0; m < t_.size(); ++m) {
    if (!(R_[m] > 0.0)) throw std::invalid_argument("radius history: R must be positive");
    if (m > 0 && !(t_[m] > t_[m - 1])) {
      throw std::invalid_argument("radius history: times must increase strictly");
    }
  }
}

RadiusHistory::RadiusHistory(std::span<const HistoryPoint> points)
    : RadiusHistory(
          [&] {
            std::vector<double> t;
            for (const auto& p : points) t.push_back(p.t);
            return t;
          }(),
          [&] {
            std::vector<double> R;
            for (const auto& p : points) R.push_back(p.R);
            return R;
          }()) {}

double damping_rate(double R, const Parameters& params) { return interface_load(R, params); }

double damping_factor(const RadiusHistory& history, double tau, double t, const Parameters& params) {
  if (!(tau <= t) || tau < history.front() || t > history.back()) {
    throw std::out_of_range("damping factor: (tau, t) outside the radius history");
  }
  if (tau == t) return 1.0;
  const auto F = cumulative_rate(history, params);
  const double integral =
      cumulative_at(history, F, t, params) - cumulative_at(history, F, tau, params);
  return std::exp(-params.gamma / params.mu * integral);
}

std::vector<double> duhamel_boundary(const RadiusHistory& history, double init_value,
                                     const Parameters& params) {
  const auto t = history.times();
  const auto R = history.radii();
  const double kappa = params.gamma / params.mu;
  const double source = 0.5 * params.ca * kappa;
  std::vector<double> out(t.size());
  out[0] = init_value;
  double f_prev = damping_rate(R[0], params);
  double g_prev = std::pow(R[0], -2.0 * params.gamma);
  // Interval by interval, with the rate and source frozen at their interval
  // means and the damping integrated exactly. Second order, and a constant
  // history reproduces the scalar solution to rounding.
  for (std::size_t m = 1; m < t.size(); ++m) {
    const double h = t[m] - t[m - 1];
    const double f = damping_rate(R[m], params);
    const double g = std::pow(R[m], -2.0 * params.gamma);
    const double a = kappa * 0.5 * (f_prev + f);
    const double decay = std::exp(-a * h);
    const double weight = a == 0.0 ? h : -std::expm1(-a * h) / a;
    out[m] = out[m - 1] * decay + source * 0.5 * (g_prev + g) * weight;
    f_prev = f;
    g_prev = g;
  }
  return out;
}

std::vector<double> duhamel_boundary_literal(const RadiusHistory& history, double init_value,
                                             const Parameters& params,
                                             std::span<const double> eval_times) {
  const auto t = history.times();
  const auto R = history.radii();
  const double kappa = params.gamma / params.mu;
  const double source = 0.5 * params.ca * kappa;
  const double t0 = history.front();
  const auto F = cumulative_rate(history, params);
  auto S = [&](double elapsed) {
    return std::exp(-kappa * cumulative_at(history, F, t0 + elapsed, params));
  };
  std::vector<double> out;
  out.reserve(eval_times.size());
  for (double te : eval_times) {
    if (te < t0 || te > history.back()) throw std::out_of_range("literal Duhamel: time outside history");
    double integral = 0.0;
    double prev = std::pow(R[0], -2.0 * params.gamma) * S(te - t0);
    double tau_prev = t0;
    for (std::size_t m = 1; m < t.size() && tau_prev < te; ++m) {
      const double tau = std::min(t[m], te);
      const double Rm = tau == t[m] ? R[m] : interpolate(t, R, tau);
      const double cur = std::pow(Rm, -2.0 * params.gamma) * S(te - tau);
      integral += 0.5 * (tau - tau_prev) * (prev + cur);
      prev = cur;
      tau_prev = tau;
    }
    out.push_back(init_value * S(te - t0) + source * integral);
  }
  return out;
}

std::vector<double> equilibrium_envelope(const RadiusHistory& history, const Parameters& params) {
  const auto R = history.radii();
  std::vector<double> out(R.size());
  for (std::size_t m = 0; m < R.size(); ++m) {
    const double rate = damping_rate(R[m], params);
    if (!(rate > 0.0)) {
      throw std::domain_error("interface damping rate is not positive: outside the small-data regime");
    }
    out[m] = 0.5 * params.ca * std::pow(R[m], -2.0 * params.gamma) / rate;
  }
  return out;
}

OracleReport oracle_compare(const RadiusHistory& history, std::span<const double> sample_t,
                            std::span<const double> sample_trace, const Parameters& params) {
  if (sample_t.size() != sample_trace.size() || sample_t.empty()) {
    throw std::invalid_argument("oracle: empty or mismatched trace series");
  }
  const auto values = duhamel_boundary(history, sample_trace[0], params);
  OracleReport report;
  for (std::size_t i = 0; i < sample_t.size(); ++i) {
    const double te = sample_t[i];
    if (te < history.front() || te > history.back()) {
      throw std::out_of_range("oracle: sample time outside the radius history");
    }
    const double o = interpolate(history.times(), values, te);
    report.t.push_back(te);
    report.simulated.push_back(sample_trace[i]);
    report.oracle.push_back(o);
    report.difference.push_back(sample_trace[i] - o);
    report.sup_diff = std::max(report.sup_diff, std::abs(sample_trace[i] - o));
  }
  return report;
}

OracleReport oracle_compare(const Trajectory& trajectory, const Parameters& params) {
  const RadiusHistory history(trajectory.history);
  std::vector<double> t, trace;
  for (const auto& rec : trajectory.records) {
    t.push_back(rec.t);
    trace.push_back(rec.boundary_density);
  }
  return oracle_compare(history, t, trace, params);
}

}  // namespace bubble
