#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "sheath/evolution.hpp"
#include "sheath/sagdeev.hpp"
#include "sheath/stationary.hpp"

namespace {

sheath::PlasmaParams reference(bool degenerate) {
  sheath::PlasmaParams p;
  p.m = 1.0;
  p.R = 1.0;
  p.gamma = 2.0;
  p.T_inf = 0.5;
  p.u_inf = degenerate ? -std::sqrt(2.0) : -2.0;
  p.phi_b = degenerate ? 0.01 : -0.05;
  return p;
}

void BM_FInverse(benchmark::State& state) {
  const auto p = reference(false);
  const sheath::BranchedInverse inv(p);
  const double lo = inv.domain_lo();
  double phi = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inv(phi));
    phi += 1e-3;
    if (phi > 0.5) {
      phi = 0.9 * lo;
    }
  }
}
BENCHMARK(BM_FInverse);

void BM_SolveStationary(benchmark::State& state) {
  const bool degenerate = state.range(1) != 0;
  const auto p = reference(degenerate);
  const sheath::GridRequest grid{degenerate ? 200.0 : 40.0, 1e4,
                                 static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sheath::solve_stationary(p, grid));
  }
}
BENCHMARK(BM_SolveStationary)
    ->ArgsProduct({{256, 1024, 4096}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_PoissonSolve(benchmark::State& state) {
  const auto s = sheath::state_from_profile(
      sheath::solve_stationary(reference(false), {40.0, 1e4, static_cast<std::size_t>(state.range(0))}));
  std::vector<double> v = s.v;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += 1e-4 * std::exp(-std::pow(s.grid.x(i) - 10.0, 2));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sheath::poisson_solve(v, s.phi.front(), s.phi.back(), s.grid, s.phi));
  }
}
BENCHMARK(BM_PoissonSolve)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMicrosecond);

void BM_Step(benchmark::State& state) {
  const auto s = sheath::state_from_profile(
      sheath::solve_stationary(reference(false), {40.0, 1e4, static_cast<std::size_t>(state.range(0))}));
  const double dt = sheath::stable_dt(s);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sheath::step(s, dt));
  }
}
BENCHMARK(BM_Step)->RangeMultiplier(4)->Range(256, 16384)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
