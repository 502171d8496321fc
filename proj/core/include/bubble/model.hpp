#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bubble {

/// Nondimensional constants of the bubble-liquid system.
///
/// Liquid pressure is (ca/2) rho^gamma, bubble pressure is
/// (ca/2 + 2/we) R^(-3 gamma0), surface tension enters through 2/(we R).
struct Parameters {
  double ca = 1.0;      // cavitation number
  double we = 10.0;     // Weber number
  double mu = 0.5;      // viscosity
  double gamma = 1.4;   // liquid adiabatic exponent
  double gamma0 = 1.4;  // bubble polytropic exponent

  /// Throws std::invalid_argument naming the first offending field.
  void validate() const;
};

Parameters make_parameters(double ca, double we, double mu, double gamma, double gamma0);

/// Uniform partition of the truncated mass interval [0, k].
///
/// Node j sits at x_j = j dx (velocity lives here); cell j spans
/// [x_j, x_{j+1}] with its center at (j + 1/2) dx (density lives here).
class Grid {
 public:
  Grid(double extent, int cells);

  double extent() const { return extent_; }
  int cells() const { return cells_; }
  int nodes() const { return cells_ + 1; }
  double dx() const { return dx_; }
  double node(int j) const { return j * dx_; }
  double center(int j) const { return (j + 0.5) * dx_; }

 private:
  double extent_;
  int cells_;
  double dx_;
};

Grid build_grid(double extent, int cells);

/// Discrete unknowns. Specific volume v = 1/rho is stored rather than rho so
/// that the continuity update and the radius constraint stay consistent.
struct State {
  double t = 0.0;
  std::vector<double> u;  // nodes 0..n, u.back() == 0
  std::vector<double> v;  // cells 0..n-1
  double R = 1.0;

  double rho(std::size_t cell) const { return 1.0 / v[cell]; }
  std::vector<double> densities() const;
  int cells() const { return static_cast<int>(v.size()); }
};

/// Throws std::domain_error when rho <= 0, R <= 0, u_n != 0 or sizes disagree.
void check_state(const State& state, const Grid& grid);

/// Node radii from r^3 = R^3 + 3 * int_0^x v dy, midpoint rule (exact for
/// piecewise-constant v). r3 is kept alongside r for exact volume bookkeeping.
struct Geometry {
  std::vector<double> r;
  std::vector<double> r3;

  /// Mean radius of cell j, used for characteristic speeds.
  double cell_mean_radius(std::size_t j) const { return 0.5 * (r[j] + r[j + 1]); }
};

Geometry radii(const State& state, const Grid& grid);

State equilibrium_state(const Grid& grid);

enum class InitialFamily { equilibrium, radius_kick, density_bump, velocity_pulse };

InitialFamily parse_family(const std::string& name);
std::string to_string(InitialFamily family);

struct InitialDataSpec {
  InitialFamily family = InitialFamily::equilibrium;
  double amplitude = 0.0;  // epsilon
  double support = 1.0;    // N, mass units
  int shape = 2;           // profile exponent, higher is smoother at the support edge

  void validate(const Grid& grid) const;
};

/// Density bump profile g on [0, N]: sin^(2 shape)(pi x / N), zero outside.
double bump_profile(double x, double support, int shape);
/// Velocity pulse profile h on [0, N]: cos^(2 shape)(pi x / (2N)), zero outside.
/// h(0) = 1 and h'(0) = 0, so the pulse is compatible with the interface
/// stress balance at equilibrium density.
double pulse_profile(double x, double support, int shape);

State make_initial_data(const Grid& grid, const Parameters& params, const InitialDataSpec& spec);

/// Smooth cutoff: 1 on [0, 1/2], cosine ramp on [1/2, 1], 0 beyond.
double cutoff(double z);

/// Applies u -> u phi(x/k), v -> 1 + (v - 1) phi(x/k) on the target grid.
/// The source state may live on a longer grid with the same spacing; it is
/// truncated to the target's cells first. R is unchanged.
State cutoff_initial_data(const State& state, const Grid& target);

struct EulerianSample {
  double r;
  double rho;
  double u;
};

/// Node radii with node velocity and node-interpolated density. Output only.
std::vector<EulerianSample> eulerian_samples(const State& state, const Grid& grid);

}  // namespace bubble
