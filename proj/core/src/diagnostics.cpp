#include "bubble/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubble {

namespace {

// Trapezoid weight of node j on an n-cell grid.
double node_weight(int j, int n, double dx) { return (j == 0 || j == n) ? 0.5 * dx : dx; }

// Difference of a cell field located at nodes. Interior nodes use the two
// adjacent cells; the end nodes copy their inner neighbour.
std::vector<double> cell_gradient_at_nodes(const std::vector<double>& f, double dx) {
  const int n = static_cast<int>(f.size());
  std::vector<double> g(n + 1, 0.0);
  for (int j = 1; j < n; ++j) g[j] = (f[j] - f[j - 1]) / dx;
  g[0] = g[1];
  g[n] = g[n - 1];
  return g;
}

double sq(double x) { return x * x; }

}  // namespace

double enthalpy_H(double rho, const Parameters& params) {
  const double g = params.gamma;
  return std::pow(rho, g - 1.0) - g + (g - 1.0) / rho;
}

double potential_P(double R, const Parameters& params) {
  const double gas = (0.5 * params.ca + 2.0 / params.we) / (3.0 * params.gamma0 - 3.0) *
                     (std::pow(R, 3.0 - 3.0 * params.gamma0) - 1.0);
  const double surface = (R * R - 1.0) / params.we;
  const double work = params.ca / 6.0 * (R * R * R - 1.0);
  return gas + surface + work;
}

double potential_P_prime(double R, const Parameters& params) {
  return R * R * (0.5 * params.ca - interface_load(R, params));
}

double enthalpy_integral(const State& state, const Grid& grid, const Parameters& params) {
  double sum = 0.0;
  for (int j = 0; j < state.cells(); ++j) sum += enthalpy_H(state.rho(j), params);
  return sum * grid.dx();
}

double basic_energy(const State& state, const Grid& grid, const Parameters& params) {
  const int n = grid.cells();
  double kinetic = 0.0;
  for (int j = 0; j <= n; ++j) kinetic += node_weight(j, n, grid.dx()) * sq(state.u[j]);
  const double potential =
      0.5 * params.ca / (params.gamma - 1.0) * enthalpy_integral(state, grid, params);
  return 0.5 * kinetic + potential + potential_P(state.R, params);
}

Dissipation dissipation(const State& state, const Geometry& geo, const Grid& grid,
                        const Parameters& params) {
  const int n = grid.cells();
  const double dx = grid.dx();
  const auto sigma = viscous_stress(state, geo, grid);
  Dissipation d;
  double stretch = 0.0;
  double hoop = 0.0;
  double cell = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rho = state.rho(j);
    const double r2 = 0.5 * (geo.r[j] * geo.r[j] + geo.r[j + 1] * geo.r[j + 1]);
    const double ux = (state.u[j + 1] - state.u[j]) / dx;
    stretch += rho * sq(r2 * ux);
    const double lo = sq(state.u[j] / geo.r[j]);
    const double hi = sq(state.u[j + 1] / geo.r[j + 1]);
    hoop += state.v[j] * 0.5 * (lo + hi);
    cell += sq(sigma[j]) * state.v[j];
  }
  d.nodal = params.mu * (stretch + 2.0 * hoop) * dx;
  d.cellwise = params.mu * cell * dx + 2.0 * params.mu * state.R * sq(state.u[0]);
  return d;
}

double bd_entropy(const State& state, const Geometry& geo, const Grid& grid,
                  const Parameters& params) {
  const int n = grid.cells();
  std::vector<double> log_rho(n);
  for (int j = 0; j < n; ++j) log_rho[j] = -std::log(state.v[j]);
  const auto grad = cell_gradient_at_nodes(log_rho, grid.dx());
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = state.u[j] + params.mu * geo.r[j] * geo.r[j] * grad[j];
    sum += node_weight(j, n, grid.dx()) * w * w;
  }
  const double potential =
      0.5 * params.ca / (params.gamma - 1.0) * enthalpy_integral(state, grid, params);
  return 0.5 * sum + potential + potential_P(state.R, params);
}

DerivativeEnergies derivative_energies(const State& state, const Geometry& geo, const Rhs& rhs,
                                       const Grid& grid, const Parameters& params) {
  const int n = grid.cells();
  const double dx = grid.dx();
  const double g = params.gamma;
  const double a = 0.5 * (g - 1.0);

  double acoustic = 0.0;
  std::vector<double> log_rho_t(n);
  for (int j = 0; j < n; ++j) {
    const double rho = state.rho(j);
    const double rho_t = -rho * rho * rhs.dv_dt[j];
    acoustic += sq(a * std::pow(rho, a - 1.0) * rho_t);
    log_rho_t[j] = rho_t / rho;
  }
  acoustic *= 0.5 * params.ca * 2.0 * g / sq(g - 1.0) * dx;

  const auto grad_t = cell_gradient_at_nodes(log_rho_t, dx);
  double kinetic = 0.0;
  double effective = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = node_weight(j, n, dx);
    const double ut = rhs.du_dt[j];
    kinetic += w * ut * ut;
    effective += w * sq(ut + params.mu * grad_t[j] * geo.r[j] * geo.r[j]);
  }

  const double load = 0.5 * params.ca + 2.0 / params.we;
  const double gamma0 = params.gamma0;
  const double Rdot2 = sq(state.u[0]);
  const double coeff_a = 1.5 * gamma0 * load - 1.0 / params.we;
  const double coeff_b = 1.5 * gamma0 * load * std::pow(state.R, 1.0 - 3.0 * gamma0) + 1.0 / params.we;

  DerivativeEnergies e;
  e.e2_a = 0.5 * kinetic + acoustic + coeff_a * Rdot2;
  e.e2_b = 0.5 * kinetic + acoustic + coeff_b * Rdot2;
  e.e3 = 0.5 * effective + acoustic;
  return e;
}

DerivativeIdentityTerms derivative_identity_terms(const State& state, const Geometry& geo,
                                                  const Rhs& rhs, const Grid& grid,
                                                  const Parameters& params) {
  const int n = grid.cells();
  const double dx = grid.dx();
  const double g = params.gamma;
  const double W = 0.5 * params.ca;
  const double mu = params.mu;
  const auto& u = state.u;
  const auto& ut = rhs.du_dt;
  const auto& r = geo.r;

  std::vector<double> p_gamma(n);
  for (int j = 0; j < n; ++j) p_gamma[j] = std::pow(state.rho(j), g);
  const auto p_grad = cell_gradient_at_nodes(p_gamma, dx);
  const auto sigma = viscous_stress(state, geo, grid);
  const auto sigma_grad = cell_gradient_at_nodes(sigma, dx);

  DerivativeIdentityTerms out;
  double nodal_source = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double w = node_weight(j, n, dx);
    nodal_source += w * (-2.0 * W * p_grad[j] * r[j] * u[j] * ut[j] +
                         mu * sigma_grad[j] * 2.0 * r[j] * u[j] * ut[j]);
  }

  double cell_source = 0.0;
  double stretch = 0.0;
  double hoop = 0.0;
  for (int j = 0; j < n; ++j) {
    const double rho = state.rho(j);
    const double rho_t = -rho * rho * rhs.dv_dt[j];
    const double u_over_r = 0.5 * (u[j] / r[j] + u[j + 1] / r[j + 1]);
    const double u2_over_r2 = 0.5 * (sq(u[j] / r[j]) + sq(u[j + 1] / r[j + 1]));
    const double flux_t = (r[j + 1] * r[j + 1] * ut[j + 1] - r[j] * r[j] * ut[j]) / dx;
    const double hoop_flux = (2.0 * r[j + 1] * sq(u[j + 1]) - 2.0 * r[j] * sq(u[j])) / dx;
    cell_source += W * 0.5 * g * (g + 1.0) * std::pow(rho, g - 4.0) * rho_t * rho_t * rho_t;
    cell_source += 4.0 * g * W * std::pow(rho, g - 3.0) * rho_t * rho_t * u_over_r;
    cell_source += 6.0 * g * W * std::pow(rho, g - 2.0) * rho_t * u2_over_r2;
    cell_source -= mu * rho_t * rhs.dv_dt[j] * flux_t;
    cell_source -= mu * rho * hoop_flux * flux_t;

    const double r2 = 0.5 * (r[j] * r[j] + r[j + 1] * r[j + 1]);
    const double uxt = (ut[j + 1] - ut[j]) / dx;
    stretch += rho * sq(r2 * uxt);
    hoop += state.v[j] * 0.5 * (sq(ut[j] / r[j]) + sq(ut[j + 1] / r[j + 1]));
  }

  const double load = W + 2.0 / params.we;
  const double R = state.R;
  const double Rdot = u[0];
  const double Rddot = ut[0];
  const double boundary = 2.0 * mu * sq(u[0]) * ut[0] -
                          3.0 * params.gamma0 * load * (std::pow(R, 1.0 - 3.0 * params.gamma0) - 1.0) *
                              Rdot * Rddot;

  out.dissipation = mu * (stretch + 2.0 * hoop) * dx;
  out.source = nodal_source + cell_source * dx + boundary;
  return out;
}

double decay_norm_Q(const State& state, const Geometry& geo, const Grid& grid) {
  const int n = grid.cells();
  const double dx = grid.dx();
  double stretch = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r2 = 0.5 * (geo.r[j] * geo.r[j] + geo.r[j + 1] * geo.r[j + 1]);
    stretch += sq(r2 * (state.u[j + 1] - state.u[j]) / dx);
  }
  double hoop = 0.0;
  for (int j = 0; j <= n; ++j) hoop += node_weight(j, n, dx) * sq(state.u[j] / geo.r[j]);
  double density = 0.0;
  for (int j = 1; j < n; ++j) {
    density += sq(geo.r[j] * geo.r[j] * (state.rho(j) - state.rho(j - 1)) / dx);
  }
  return (stretch + density) * dx + hoop + sq(state.R - 1.0);
}

double boundary_trace(const State& state, const Parameters& params) {
  return std::pow(interface_density(state) * state.R * state.R, -params.gamma);
}

DiagnosticsRecord evaluate_record(const State& state, const Geometry& geo, const Grid& grid,
                                  const Parameters& params) {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.R = state.R;
  rec.dR_dt = state.u[0];
  rec.E0 = basic_energy(state, grid, params);
  const auto d = dissipation(state, geo, grid, params);
  rec.D = d.cellwise;
  rec.D_nodal = d.nodal;
  rec.E1 = bd_entropy(state, geo, grid, params);
  const Rhs rhs = evaluate_rhs(state, geo, grid, params);
  const auto e = derivative_energies(state, geo, rhs, grid, params);
  rec.E2_varA = e.e2_a;
  rec.E2_varB = e.e2_b;
  rec.E3 = e.e3;
  rec.Q = decay_norm_Q(state, geo, grid);
  rec.Hint = enthalpy_integral(state, grid, params);
  rec.P = potential_P(state.R, params);
  const auto [vmin, vmax] = std::minmax_element(state.v.begin(), state.v.end());
  rec.rho_min = 1.0 / *vmax;
  rec.rho_max = 1.0 / *vmin;
  rec.boundary_density = boundary_trace(state, params);
  return rec;
}

std::vector<double> energy_budget(std::span<const DiagnosticsRecord> records) {
  std::vector<double> out;
  out.reserve(records.size());
  if (records.empty()) return out;
  const double e0 = records.front().E0;
  for (const auto& rec : records) out.push_back(rec.E0 + rec.cumD - e0);
  return out;
}

std::optional<DecayFit> fit_decay(std::span<const double> t, std::span<const double> Q,
                                  DecayWindow window) {
  if (t.size() != Q.size() || t.empty()) {
    throw std::invalid_argument("decay fit: empty or mismatched series");
  }
  if (!(window.lo < window.hi) || window.lo < t.front() || window.hi > t.back()) {
    throw std::invalid_argument("decay fit: window outside the data span");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  std::size_t zeros = 0;
  double envelope = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < window.lo || t[i] > window.hi) continue;
    if (Q[i] == 0.0) {
      ++zeros;
      continue;
    }
    if (!(Q[i] > 0.0)) throw std::domain_error("decay fit: Q must be nonnegative");
    const double x = std::log1p(t[i]);
    const double y = std::log(Q[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    envelope = std::max(envelope, (1.0 + t[i]) * Q[i]);
    ++m;
  }
  if (m == 0 && zeros > 0) return std::nullopt;
  if (zeros > 0) throw std::domain_error("decay fit: Q vanishes on part of the window");
  if (m < 2) throw std::invalid_argument("decay fit: fewer than two samples in window");
  const double denom = m * sxx - sx * sx;
  DecayFit fit;
  fit.window = window;
  fit.slope = (m * sxy - sx * sy) / denom;
  fit.amplitude = std::exp((sy - fit.slope * sx) / m);
  fit.sup_envelope = envelope;
  fit.points = m;
  return fit;
}

std::optional<DecayFit> fit_decay(std::span<const DiagnosticsRecord> records, DecayWindow window) {
  std::vector<double> t, q;
  t.reserve(records.size());
  q.reserve(records.size());
  for (const auto& rec : records) {
    t.push_back(rec.t);
    q.push_back(rec.Q);
  }
  return fit_decay(t, q, window);
}

}  // namespace bubble
