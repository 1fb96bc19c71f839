#include <benchmark/benchmark.h>

#include "dimerlab/dimer.hpp"
#include "dimerlab/stationary.hpp"

using namespace dimerlab;

static void BM_EtaPlus(benchmark::State& state) {
  const double mu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eta_plus(mu));
}
BENCHMARK(BM_EtaPlus)->Arg(4)->Arg(5)->Arg(8);

static void BM_FindStationaryPoints(benchmark::State& state) {
  const DimerParams p(5.0, static_cast<double>(state.range(0)) / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(find_stationary_points(p));
}
BENCHMARK(BM_FindStationaryPoints)->Arg(20)->Arg(50)->Arg(65);

static void BM_BifurcationDiagram(benchmark::State& state) {
  BifurcationOptions opts;
  opts.threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bifurcation_diagram(5.0, 3.0, 8.0, static_cast<std::size_t>(state.range(0)), opts));
  }
}
BENCHMARK(BM_BifurcationDiagram)->Args({200, 1})->Args({200, 0})->Unit(benchmark::kMillisecond);

static void BM_PhasePortrait(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phase_portrait({5.0, 5.0}, n, n));
}
BENCHMARK(BM_PhasePortrait)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);
