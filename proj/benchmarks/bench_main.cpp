#include <benchmark/benchmark.h>

#include "trapexp/perturbation.hpp"
#include "trapexp/protocol.hpp"
#include "trapexp/simulator.hpp"

using namespace trapexp;

static void BM_SolveC1(benchmark::State& state) {
  const double tau_f = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_c1(tau_f, 10.0, 1.0));
}
BENCHMARK(BM_SolveC1)->Arg(4)->Arg(50)->Arg(1000);

static void BM_BetaOffDiagonal(benchmark::State& state) {
  const auto d = bsb_protocol(5.0, 10.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(beta_integral(d.trajectory, d.protocol.control, 0, 2, 5.0));
  }
}
BENCHMARK(BM_BetaOffDiagonal)->Unit(benchmark::kMillisecond);

static void BM_PerturbativeReport(benchmark::State& state) {
  const auto d = bsb_protocol(5.0, 10.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(perturbative_report(d, 98.34));
}
BENCHMARK(BM_PerturbativeReport)->Unit(benchmark::kMillisecond);

static void BM_EvolveBsb(benchmark::State& state) {
  const auto d = bsb_protocol(5.0, 10.0, 1.0);
  SimConfig cfg;
  cfg.grid = default_grid(10.0, 98.34, PotentialModel::Quartic);
  cfg.grid.n_points = static_cast<std::size_t>(state.range(0));
  const auto psi0 = stationary_state(cfg.grid, 1.0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(psi0, d.protocol.control, cfg, 98.34));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(5.0 / cfg.dt));
}
BENCHMARK(BM_EvolveBsb)->Arg(2048)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
