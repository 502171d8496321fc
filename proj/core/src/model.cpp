#include "bubble/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bubble {

namespace {

void require_field(bool ok, const char* name, const char* what) {
  if (!ok) {
    std::ostringstream os;
    os << "invalid parameter '" << name << "': " << what;
    throw std::invalid_argument(os.str());
  }
}

double ipow(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

}  // namespace

void Parameters::validate() const {
  require_field(std::isfinite(ca) && ca > 0.0, "ca", "must be > 0");
  require_field(std::isfinite(we) && we > 0.0, "we", "must be > 0");
  require_field(std::isfinite(mu) && mu > 0.0, "mu", "must be > 0");
  require_field(std::isfinite(gamma) && gamma > 1.0, "gamma", "must be > 1");
  require_field(std::isfinite(gamma0) && gamma0 > 1.0, "gamma0", "must be > 1");
}

Parameters make_parameters(double ca, double we, double mu, double gamma, double gamma0) {
  Parameters p{ca, we, mu, gamma, gamma0};
  p.validate();
  return p;
}

Grid::Grid(double extent, int cells) : extent_(extent), cells_(cells), dx_(0.0) {
  if (!(std::isfinite(extent) && extent > 0.0)) {
    throw std::invalid_argument("grid extent k must be > 0");
  }
  if (cells < 4) throw std::invalid_argument("grid needs at least 4 cells");
  dx_ = extent / cells;
}

Grid build_grid(double extent, int cells) { return Grid(extent, cells); }

std::vector<double> State::densities() const {
  std::vector<double> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out[j] = 1.0 / v[j];
  return out;
}

void check_state(const State& state, const Grid& grid) {
  if (state.cells() != grid.cells() || static_cast<int>(state.u.size()) != grid.nodes()) {
    throw std::domain_error("state size does not match grid");
  }
  if (!(state.R > 0.0) || !std::isfinite(state.R)) {
    throw std::domain_error("bubble radius must be positive");
  }
  for (double vj : state.v) {
    if (!(vj > 0.0) || !std::isfinite(vj)) throw std::domain_error("density must be positive");
  }
  if (state.u.back() != 0.0) throw std::domain_error("outer wall velocity must vanish");
}

Geometry radii(const State& state, const Grid& grid) {
  const auto n = state.v.size();
  Geometry g;
  g.r.resize(n + 1);
  g.r3.resize(n + 1);
  g.r3[0] = state.R * state.R * state.R;
  g.r[0] = state.R;
  const double step = 3.0 * grid.dx();
  for (std::size_t j = 0; j < n; ++j) {
    g.r3[j + 1] = g.r3[j] + step * state.v[j];
    g.r[j + 1] = std::cbrt(g.r3[j + 1]);
  }
  return g;
}

State equilibrium_state(const Grid& grid) {
  State s;
  s.t = 0.0;
  s.u.assign(grid.nodes(), 0.0);
  s.v.assign(grid.cells(), 1.0);
  s.R = 1.0;
  return s;
}

InitialFamily parse_family(const std::string& name) {
  if (name == "equilibrium") return InitialFamily::equilibrium;
  if (name == "radius-kick") return InitialFamily::radius_kick;
  if (name == "density-bump") return InitialFamily::density_bump;
  if (name == "velocity-pulse") return InitialFamily::velocity_pulse;
  throw std::invalid_argument("unknown initial data family '" + name + "'");
}

std::string to_string(InitialFamily family) {
  switch (family) {
    case InitialFamily::equilibrium: return "equilibrium";
    case InitialFamily::radius_kick: return "radius-kick";
    case InitialFamily::density_bump: return "density-bump";
    case InitialFamily::velocity_pulse: return "velocity-pulse";
  }
  return "unknown";
}

void InitialDataSpec::validate(const Grid& grid) const {
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw std::invalid_argument("invalid parameter 'amplitude': must be >= 0");
  }
  if (!(support > 0.0)) throw std::invalid_argument("invalid parameter 'support': must be > 0");
  if (support > grid.extent()) {
    throw std::invalid_argument("invalid parameter 'support': exceeds domain extent k");
  }
  if (shape < 1) throw std::invalid_argument("invalid parameter 'shape': must be >= 1");
}

double bump_profile(double x, double support, int shape) {
  if (x <= 0.0 || x >= support) return 0.0;
  return ipow(std::sin(std::numbers::pi * x / support), 2 * shape);
}

double pulse_profile(double x, double support, int shape) {
  if (x < 0.0 || x >= support) return 0.0;
  return ipow(std::cos(0.5 * std::numbers::pi * x / support), 2 * shape);
}

State make_initial_data(const Grid& grid, const Parameters& params, const InitialDataSpec& spec) {
  params.validate();
  spec.validate(grid);
  State s = equilibrium_state(grid);
  const double eps = spec.amplitude;
  switch (spec.family) {
    case InitialFamily::equilibrium:
      break;
    case InitialFamily::radius_kick:
      s.R = 1.0 + eps;
      break;
    case InitialFamily::density_bump:
      for (int j = 0; j < grid.cells(); ++j) {
        s.v[j] = 1.0 + eps * bump_profile(grid.center(j), spec.support, spec.shape);
      }
      break;
    case InitialFamily::velocity_pulse:
      for (int j = 0; j < grid.cells(); ++j) {
        s.u[j] = eps * pulse_profile(grid.node(j), spec.support, spec.shape);
      }
      s.u.back() = 0.0;
      break;
  }
  check_state(s, grid);
  return s;
}

double cutoff(double z) {
  if (z <= 0.5) return 1.0;
  if (z >= 1.0) return 0.0;
  return 0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * (z - 0.5)));
}

State cutoff_initial_data(const State& state, const Grid& target) {
  if (state.cells() < target.cells()) {
    throw std::invalid_argument("cutoff source state is shorter than the target grid");
  }
  State out;
  out.t = state.t;
  out.R = state.R;
  out.u.resize(target.nodes());
  out.v.resize(target.cells());
  const double k = target.extent();
  for (int j = 0; j < target.nodes(); ++j) {
    const double phi = cutoff(target.node(j) / k);
    out.u[j] = phi == 1.0 ? state.u[j] : state.u[j] * phi;
  }
  out.u.back() = 0.0;
  for (int j = 0; j < target.cells(); ++j) {
    const double phi = cutoff(target.center(j) / k);
    out.v[j] = phi == 1.0 ? state.v[j] : 1.0 + (state.v[j] - 1.0) * phi;
  }
  return out;
}

std::vector<EulerianSample> eulerian_samples(const State& state, const Grid& grid) {
  const Geometry geo = radii(state, grid);
  const int n = grid.cells();
  std::vector<EulerianSample> out(grid.nodes());
  for (int j = 0; j <= n; ++j) {
    double rho;
    if (j == 0) {
      rho = state.rho(0);
    } else if (j == n) {
      rho = state.rho(n - 1);
    } else {
      rho = 0.5 * (state.rho(j - 1) + state.rho(j));
    }
    out[j] = {geo.r[j], rho, state.u[j]};
  }
  return out;
}

}  // namespace bubble
