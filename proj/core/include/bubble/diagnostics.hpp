#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bubble/model.hpp"
#include "bubble/operators.hpp"

namespace bubble {

/// H(rho) = rho^(gamma-1) - gamma + (gamma-1)/rho. Nonnegative, zero only at 1.
double enthalpy_H(double rho, const Parameters& params);

/// Radius potential P(R): gas, surface and pressure-work energy, P(1) = 0.
double potential_P(double R, const Parameters& params);

/// dP/dR = R^2 (ca/2 - p_b(R) + (2/we)/R).
double potential_P_prime(double R, const Parameters& params);

/// Basic energy E0: kinetic + (ca/2)/(gamma-1) int H + P(R).
double basic_energy(const State& state, const Grid& grid, const Parameters& params);

/// int H(rho) dx.
double enthalpy_integral(const State& state, const Grid& grid, const Parameters& params);

struct Dissipation {
  /// mu int rho (r^2 u_x)^2 + 2 mu int u^2 / (rho r^2), direct quadrature.
  double nodal = 0.0;
  /// mu int sigma^2 / rho + 2 mu R u(0)^2, the rate the scheme's energy
  /// telescoping actually produces.
  double cellwise = 0.0;
};

Dissipation dissipation(const State& state, const Geometry& geo, const Grid& grid,
                        const Parameters& params);

/// Bresch-Desjardins entropy: energy of the effective velocity
/// u + mu r^2 (log rho)_x, plus the H and P potentials.
double bd_entropy(const State& state, const Geometry& geo, const Grid& grid,
                  const Parameters& params);

struct DerivativeEnergies {
  double e2_a = 0.0;  // boundary coefficient 3 gamma0/2 (ca/2 + 2/we) - 1/we
  double e2_b = 0.0;  // boundary coefficient 3 gamma0/2 (ca/2 + 2/we) R^(1 - 3 gamma0) + 1/we
  double e3 = 0.0;
};

/// Time derivatives are taken from the spatial right-hand side of the same
/// state, so the energies are defined at t = 0.
DerivativeEnergies derivative_energies(const State& state, const Geometry& geo, const Rhs& rhs,
                                       const Grid& grid, const Parameters& params);

/// Both sides of the first-order energy identity for u_t, evaluated on one state.
struct DerivativeIdentityTerms {
  /// mu int rho (r^2 u_xt)^2 + 2 mu int u_t^2 / (rho r^2).
  double dissipation = 0.0;
  /// Pressure, viscous-commutator and boundary source terms.
  double source = 0.0;
};

DerivativeIdentityTerms derivative_identity_terms(const State& state, const Geometry& geo,
                                                  const Rhs& rhs, const Grid& grid,
                                                  const Parameters& params);

/// Perturbation norm ||r^2 u_x||^2 + ||u/r||^2 + ||r^2 rho_x||^2 + (R-1)^2.
double decay_norm_Q(const State& state, const Geometry& geo, const Grid& grid);

/// (rho~ R^2)^(-gamma) with rho~ the extrapolated interface density.
double boundary_trace(const State& state, const Parameters& params);

struct DiagnosticsRecord {
  double t = 0.0;
  double R = 1.0;
  double dR_dt = 0.0;
  double E0 = 0.0;
  double D = 0.0;
  double cumD = 0.0;
  double E1 = 0.0;
  double E2_varA = 0.0;
  double E2_varB = 0.0;
  double E3 = 0.0;
  double Q = 0.0;
  double Hint = 0.0;
  double P = 0.0;
  double rho_min = 1.0;
  double rho_max = 1.0;
  double energy_residual = 0.0;
  double boundary_density = 1.0;
  double D_nodal = 0.0;  // not serialized
};

/// All instantaneous functionals of one state; cumD and energy_residual are
/// left for the caller, which owns the time history.
DiagnosticsRecord evaluate_record(const State& state, const Geometry& geo, const Grid& grid,
                                  const Parameters& params);

/// E0(t) + cumD(t) - E0(0) per record.
std::vector<double> energy_budget(std::span<const DiagnosticsRecord> records);

struct DecayWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct DecayFit {
  DecayWindow window;
  double slope = 0.0;      // d log Q / d log(1 + t)
  double amplitude = 0.0;  // exp of the fitted intercept
  double sup_envelope = 0.0;
  std::size_t points = 0;
};

/// Least-squares power-law fit of Q over the window. Returns nullopt when Q
/// vanishes identically on the window (equilibrium). Throws
/// std::invalid_argument when the window is empty or leaves the data span.
std::optional<DecayFit> fit_decay(std::span<const double> t, std::span<const double> Q,
                                  DecayWindow window);
std::optional<DecayFit> fit_decay(std::span<const DiagnosticsRecord> records, DecayWindow window);

}  // namespace bubble
