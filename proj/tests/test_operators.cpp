#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bubble/diagnostics.hpp"
#include "bubble/operators.hpp"
#include "support.hpp"

using namespace bubble;
using bubble::testing::reference_params;

TEST_CASE("pressure law") {
  const Parameters p = reference_params();
  CHECK(pressure(1.0, p) == 0.5 * p.ca);
  const Parameters q{1.0, 10.0, 0.5, 2.0, 1.4};
  CHECK(pressure(2.0, q) == doctest::Approx(2.0).epsilon(1e-15));
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double rho = 0.1 * i;
    CHECK(pressure(rho, p) > prev);
    prev = pressure(rho, p);
  }
}

TEST_CASE("bubble pressure") {
  const Parameters p = reference_params();
  CHECK(bubble_pressure(1.0, p) == doctest::Approx(0.5 * p.ca + 2.0 / p.we).epsilon(1e-15));
  const Parameters q{1.0, 1.0, 0.5, 1.4, 4.0 / 3.0};
  CHECK(bubble_pressure(2.0, q) == doctest::Approx(0.15625).epsilon(1e-14));
  double prev = bubble_pressure(0.1, p);
  for (int i = 2; i <= 50; ++i) {
    const double R = 0.1 * i;
    CHECK(bubble_pressure(R, p) < prev);
    prev = bubble_pressure(R, p);
  }
}

TEST_CASE("sound speed") {
  const Parameters q{2.0, 10.0, 0.5, 2.0, 1.4};
  CHECK(sound_speed(1.0, q) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  bubble::testing::Generator gen(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Parameters p = gen.params();
    CHECK(sound_speed(1.0, p) == doctest::Approx(std::sqrt(p.gamma * p.ca / 2.0)).epsilon(1e-14));
    const double rho = gen.uniform(0.2, 5.0);
    const double c = sound_speed(rho, p);
    CHECK(c * c * rho / (p.gamma * pressure(rho, p)) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("viscous stress") {
  const Grid g(3.0, 12);
  State s = equilibrium_state(g);
  for (double sigma : viscous_stress(s, radii(s, g), g)) CHECK(sigma == 0.0);

  SUBCASE("uniform expansion gives sigma = 3") {
    const Geometry geo = radii(s, g);
    s.u = geo.r;  // deliberately ignores the wall condition
    for (double sigma : viscous_stress(s, geo, g)) CHECK(sigma == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("the last cell sees the wall velocity") {
    s.u[g.cells() - 1] = 0.01;
    const Geometry geo = radii(s, g);
    const auto sigma = viscous_stress(s, geo, g);
    const int last = g.cells() - 1;
    CHECK(sigma[last] == doctest::Approx(-geo.r[last] * geo.r[last] * 0.01 / g.dx()));
  }
}

TEST_CASE("interface total stress") {
  const Parameters p = reference_params();
  const Grid g(2.0, 8);
  State s = equilibrium_state(g);
  CHECK(interface_total_stress(s, p) == -0.5 * p.ca);

  const Parameters q{1.0, 1.0, 0.7, 1.4, 4.0 / 3.0};
  s.R = 2.0;
  CHECK(interface_total_stress(s, q) == doctest::Approx(0.84375).epsilon(1e-14));

  const double base = interface_total_stress(s, q);
  for (double u0 : {-0.2, 0.1, 0.3}) {
    s.u[0] = u0;
    CHECK(interface_total_stress(s, q) - base == doctest::Approx(2.0 * q.mu * u0 / s.R).epsilon(1e-12));
  }
}

TEST_CASE("boundary stress residual") {
  const Grid g(2.0, 16);
  const State s = equilibrium_state(g);
  Parameters p = reference_params();
  CHECK(boundary_stress_residual(s, radii(s, g), g, p) == 0.0);
  p.mu *= 2.0;
  CHECK(boundary_stress_residual(s, radii(s, g), g, p) == 0.0);
}

TEST_CASE("interface density extrapolates linearly") {
  const Grid g(2.0, 8);
  State s = equilibrium_state(g);
  s.v[0] = 1.0 / 1.2;
  s.v[1] = 1.0 / 1.1;
  CHECK(interface_density(s) == doctest::Approx(1.25));
}

TEST_CASE("momentum rhs") {
  const Parameters p = reference_params();

  SUBCASE("equilibrium is at rest") {
    const Grid g(4.0, 16);
    const Rhs rhs = evaluate_rhs(equilibrium_state(g), g, p);
    for (double a : rhs.du_dt) CHECK(a == 0.0);
    for (double b : rhs.dv_dt) CHECK(b == 0.0);
    CHECK(rhs.dR_dt == 0.0);
  }
  SUBCASE("radius kick pulls the interface back") {
    const Grid g(4.0, 16);
    for (double eps : {0.01, 0.1, -0.05}) {
      State s = equilibrium_state(g);
      s.R = 1.0 + eps;
      const Geometry geo = radii(s, g);
      const auto du = momentum_rhs(geo, stress_field(s, geo, g, p), g);
      const double T0 = -bubble_pressure(s.R, p) + 2.0 / (p.we * s.R);
      const double expected = s.R * s.R * (-0.5 * p.ca - T0) / (0.5 * g.dx());
      CHECK(du[0] == doctest::Approx(expected).epsilon(1e-10));
      CHECK(std::signbit(du[0]) == (eps > 0.0));
    }
  }
  SUBCASE("uniform stress matched at the interface exerts no force") {
    const Grid g(4.0, 16);
    bubble::testing::Generator gen(7);
    const State s = gen.state(g, 0.1);
    const Geometry geo = radii(s, g);
    StressField stress;
    stress.total.assign(g.cells(), -0.37);
    stress.interface = -0.37;
    for (double a : momentum_rhs(geo, stress, g)) CHECK(a == 0.0);
  }
  SUBCASE("mass-weighted momentum telescopes to the boundary stresses") {
    bubble::testing::Generator gen(8);
    for (int trial = 0; trial < 20; ++trial) {
      const Grid g = gen.grid();
      const State s = gen.state(g, 0.1);
      const Geometry geo = radii(s, g);
      const StressField stress = stress_field(s, geo, g, p);
      const auto du = momentum_rhs(geo, stress, g);
      double sum = 0.5 * g.dx() * du[0] / (geo.r[0] * geo.r[0]);
      for (int j = 1; j < g.cells(); ++j) sum += g.dx() * du[j] / (geo.r[j] * geo.r[j]);
      CHECK(du.back() == 0.0);
      CHECK(sum == doctest::Approx(stress.total.back() - stress.interface).epsilon(1e-10));
    }
  }
}

TEST_CASE("continuity rhs") {
  const Grid g(3.0, 12);
  State s = equilibrium_state(g);
  for (double b : continuity_rhs(s, radii(s, g), g)) CHECK(b == 0.0);

  const Geometry geo = radii(s, g);
  State expanding = s;
  expanding.u = geo.r;
  for (double b : continuity_rhs(expanding, geo, g)) CHECK(b == doctest::Approx(3.0).epsilon(1e-12));

  SUBCASE("discrete volume is conserved with a rigid wall") {
    bubble::testing::Generator gen(9);
    for (int trial = 0; trial < 20; ++trial) {
      const Grid gg = gen.grid();
      const State st = gen.state(gg, 0.1);
      const Geometry gm = radii(st, gg);
      const Rhs rhs = evaluate_rhs(st, gm, gg, reference_params());
      double volume_rate = 0.0;
      for (double b : rhs.dv_dt) volume_rate += b * gg.dx();
      CHECK(rhs.dR_dt == st.u[0]);
      CHECK(volume_rate + st.R * st.R * rhs.dR_dt == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("radius update stays compatible with the volume integral") {
  const Parameters p = reference_params();
  bubble::testing::Generator gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const Grid g = gen.grid();
    const State s = gen.state(g, 0.1);
    const Geometry geo = radii(s, g);
    const Rhs rhs = evaluate_rhs(s, geo, g, p);
    auto mismatch = [&](double dt) {
      State next = s;
      for (int j = 0; j < g.cells(); ++j) next.v[j] += dt * rhs.dv_dt[j];
      next.R += dt * rhs.dR_dt;
      const Geometry moved = radii(next, g);
      double m = 0.0;
      for (int j = 0; j < g.nodes(); ++j) m = std::max(m, std::abs(moved.r[j] - (geo.r[j] + dt * s.u[j])));
      return m;
    };
    const double e1 = mismatch(1e-3);
    const double e2 = mismatch(5e-4);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("viscous stress matches the continuum split to first order") {
  // sigma = rho r^2 u_x + 2 u / r, checked on a smooth manufactured field.
  auto error = [](int n) {
    const Grid g(4.0, n);
    State s = equilibrium_state(g);
    for (int j = 0; j < g.nodes(); ++j) s.u[j] = 0.1 * std::sin(std::numbers::pi * g.node(j) / 4.0);
    for (int j = 0; j < g.cells(); ++j) s.v[j] = 1.0 + 0.05 * std::cos(g.center(j));
    s.R = 1.02;
    const Geometry geo = radii(s, g);
    const auto sigma = viscous_stress(s, geo, g);
    double e = 0.0;
    for (int j = 0; j < g.cells(); ++j) {
      const double rbar = geo.cell_mean_radius(j);
      const double ux = (s.u[j + 1] - s.u[j]) / g.dx();
      const double ubar = 0.5 * (s.u[j] + s.u[j + 1]);
      e = std::max(e, std::abs(sigma[j] - (s.rho(j) * rbar * rbar * ux + 2.0 * ubar / rbar)));
    }
    return e;
  };
  const double e1 = error(32), e2 = error(64), e3 = error(128);
  CHECK(std::log2(e1 / e2) >= 0.9);
  CHECK(std::log2(e2 / e3) >= 0.9);
}
