// Serial reference kernels against their OpenMP counterparts.  Run with
// OMP_NUM_THREADS set to compare scaling.

#include <benchmark/benchmark.h>

#include "duffing/jump.hpp"
#include "duffing/singular.hpp"
#include "duffing/steady.hpp"

namespace {

using duffing::Execution;

Execution exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void BM_SingularScan(benchmark::State& state) {
  duffing::singular::ScanGrid grid;
  grid.n_zeta = 100;
  grid.n_c = 100;
  for (auto _ : state) {
    benchmark::DoNotOptimize(duffing::singular::scan_no_singular(grid, exec_of(state)));
  }
}

void BM_ManifoldSlice2d(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        duffing::jump::manifold_slice_2d(0.0783, 0.025, 0.1, {0.0, 7.0, 200}, exec_of(state)));
  }
}

void BM_ResponseCurve(benchmark::State& state) {
  const duffing::Params pr;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        duffing::steady::response_curve(pr, {0.3, 1.0, 400}, exec_of(state)));
  }
}

void BM_BorderSet(benchmark::State& state) {
  const duffing::Params pr;
  for (auto _ : state) {
    benchmark::DoNotOptimize(duffing::jump::border_set(pr, duffing::jump::Parameter::f0,
                                                       {0.0, 10.0, 200}, exec_of(state)));
  }
}

}  // namespace

// Argument 0 is the serial reference, 1 the parallel kernel.
BENCHMARK(BM_SingularScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ManifoldSlice2d)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResponseCurve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BorderSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
