// Serial reference vs OpenMP sweep over a Fig. 1 style grid.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "qes/sweep.hpp"

namespace {

const qes::RitzSolver& solver() {
  static const qes::RitzSolver s(0.0);
  return s;
}

qes::SweepSpec grid_spec(int points) {
  qes::SweepSpec spec;
  spec.mode = qes::SolveFor::a;
  spec.grid = qes::linear_grid(-12.0, 12.0, points);
  spec.levels = 7;
  spec.mirror = true;
  return spec;
}

void BM_SweepSerial(benchmark::State& state) {
  const auto spec = grid_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qes::sweep_serial(solver(), spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepParallel(benchmark::State& state) {
  const auto spec = grid_spec(static_cast<int>(state.range(0)));
  state.counters["threads"] = omp_get_max_threads();
  for (auto _ : state) benchmark::DoNotOptimize(qes::sweep_parallel(solver(), spec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SolverSetup(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(qes::RitzSolver(0.0));
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolverSetup)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
