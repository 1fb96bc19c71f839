#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "dimerlab/dynamics.hpp"

using namespace dimerlab;

static void BM_IntegratePhase(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_phase({0.85, std::numbers::pi}, {5.0, 5.0}, 100.0, 1e-3, tol));
  }
}
BENCHMARK(BM_IntegratePhase)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_IntegrateAmplitudes(benchmark::State& state) {
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const auto a0 = to_amplitudes({0.85, std::numbers::pi}, 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_amplitudes(a0, {5.0, 5.0}, 100.0, 1e-3, tol));
}
BENCHMARK(BM_IntegrateAmplitudes)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
