#include <benchmark/benchmark.h>

#include "dimerlab/reduction.hpp"

using namespace dimerlab;

// hbar in hundredths.
static void BM_SolveDoublet(benchmark::State& state) {
  const PotentialSpec spec{Potential::quartic(1.0, 1.0), static_cast<double>(state.range(0)) / 100.0, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(solve_doublet(spec));
}
BENCHMARK(BM_SolveDoublet)->Arg(40)->Arg(30)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_ComputeC(benchmark::State& state) {
  auto r = solve_doublet({Potential::quartic(1.0, 1.0), 0.3, std::nullopt});
  for (auto _ : state) benchmark::DoNotOptimize(compute_c(r, 5.0));
}
BENCHMARK(BM_ComputeC)->Unit(benchmark::kMillisecond);
