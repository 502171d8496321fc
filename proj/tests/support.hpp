#pragma once

#include <cmath>
#include <random>

#include "bubble/integrator.hpp"
#include "bubble/model.hpp"

namespace bubble::testing {

inline Parameters reference_params() { return Parameters{1.0, 10.0, 0.5, 1.4, 1.4}; }

inline InitialDataSpec spec(InitialFamily family, double amplitude, double support = 1.0) {
  InitialDataSpec s;
  s.family = family;
  s.amplitude = amplitude;
  s.support = support;
  return s;
}

// Seeded source of small random near-equilibrium states and parameter sets.
class Generator {
 public:
  explicit Generator(unsigned long seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Parameters params() {
    return Parameters{uniform(0.2, 3.0), uniform(1.0, 50.0), uniform(0.05, 2.0), uniform(1.1, 3.0),
                      uniform(1.1, 2.0)};
  }

  Grid grid() { return Grid(uniform(1.0, 30.0), integer(4, 96)); }

  // Smooth-ish random perturbation of size eps around equilibrium.
  State state(const Grid& grid, double eps) {
    State s = equilibrium_state(grid);
    s.R = 1.0 + uniform(-eps, eps);
    for (int j = 0; j < grid.cells(); ++j) s.v[j] = 1.0 + uniform(-eps, eps);
    for (int j = 0; j < grid.cells(); ++j) s.u[j] = uniform(-eps, eps);
    s.u.back() = 0.0;
    return s;
  }

 private:
  std::mt19937_64 rng_;
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace bubble::testing
