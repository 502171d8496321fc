#include <benchmark/benchmark.h>

#include "bubble/diagnostics.hpp"
#include "bubble/integrator.hpp"
#include "bubble/operators.hpp"
#include "bubble/tridiagonal.hpp"

using namespace bubble;

namespace {

const Parameters params{1.0, 10.0, 0.5, 1.4, 1.4};

State kicked(const Grid& grid) {
  InitialDataSpec spec;
  spec.family = InitialFamily::radius_kick;
  spec.amplitude = 0.05;
  return make_initial_data(grid, params, spec);
}

}  // namespace

static void BM_radii(benchmark::State& st) {
  const Grid grid(50.0, static_cast<int>(st.range(0)));
  const State s = kicked(grid);
  for (auto _ : st) benchmark::DoNotOptimize(radii(s, grid));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_radii)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_rhs(benchmark::State& st) {
  const Grid grid(50.0, static_cast<int>(st.range(0)));
  const State s = kicked(grid);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_rhs(s, grid, params));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_rhs)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

static void BM_step(benchmark::State& st) {
  const Grid grid(50.0, static_cast<int>(st.range(0)));
  IntegratorConfig cfg;
  cfg.scheme = st.range(1) ? Scheme::explicit_rk2 : Scheme::semi_implicit;
  State s = kicked(grid);
  const double dt = stable_dt(s, radii(s, grid), grid, cfg, params);
  for (auto _ : st) {
    s = step(s, dt, grid, params, cfg);
    benchmark::ClobberMemory();
  }
  st.SetLabel(to_string(cfg.scheme));
}
BENCHMARK(BM_step)->ArgsProduct({{256, 1024, 4096}, {0, 1}});

static void BM_record(benchmark::State& st) {
  const Grid grid(50.0, static_cast<int>(st.range(0)));
  const State s = kicked(grid);
  const Geometry geo = radii(s, grid);
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_record(s, geo, grid, params));
}
BENCHMARK(BM_record)->Arg(1024)->Arg(4096);

static void BM_tridiagonal(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const std::vector<double> a(n, -1.0), b(n, 4.0), c(n, -1.0), d(n, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(solve_tridiagonal(a, b, c, d));
  st.SetComplexityN(st.range(0));
}
BENCHMARK(BM_tridiagonal)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

BENCHMARK_MAIN();
