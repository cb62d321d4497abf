// Serial reference vs OpenMP for the three parallel kernels. Results are
// identical in both modes; only wall time differs.

#include <benchmark/benchmark.h>

#include "opseller/oracle.hpp"
#include "opseller/rationing_sim.hpp"
#include "opseller/sweep.hpp"

using namespace opseller;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_Sweep(benchmark::State& state) {
  SweepSpec spec;
  spec.x = Axis::parse("ci:0:10:" + std::to_string(state.range(1)));
  spec.y = Axis::parse("cm:0:10:" + std::to_string(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1) * state.range(1));
}

void BM_OracleEquilibrium(benchmark::State& state) {
  GameParams params;
  params.c_I = 1.0;
  OracleConfig cfg;
  cfg.price_points = static_cast<int>(state.range(1));
  cfg.quantity_points = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(oracle_equilibrium(params, cfg, mode(state)));
}

void BM_Simulation(benchmark::State& state) {
  SimConfig cfg;
  cfg.trials = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_arrivals(cfg, mode(state)));
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_Sweep)->ArgNames({"parallel", "points"})->ArgsProduct({{0, 1}, {50}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleEquilibrium)
    ->ArgNames({"parallel", "points"})
    ->ArgsProduct({{0, 1}, {200}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Simulation)
    ->ArgNames({"parallel", "trials"})
    ->ArgsProduct({{0, 1}, {100000}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
