#include <benchmark/benchmark.h>

#include "bandlaw/limitlaw.hpp"

using namespace bandlaw;

static structure::WeightFunction half_band() {
  return structure::WeightFunction::indicator_union({{0.0, 0.5}});
}

static void BM_KernelBuild(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto w = half_band();
  for (auto _ : state) {
    limitlaw::Kernel k(w, limitlaw::QuadGrid{m});
    benchmark::DoNotOptimize(k);
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_KernelBuild)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void BM_LimitMoment8(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto w = half_band();
  limitlaw::Kernel k(w, limitlaw::QuadGrid{m});
  for (auto _ : state) {
    const double v = k.limit_moment(8);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(m);
}
BENCHMARK(BM_LimitMoment8)->RangeMultiplier(2)->Range(256, 2048)->Complexity();

static void BM_FiniteNExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pp = combinat::enumerate_ncpp(4)[0];
  const auto w = half_band();
  for (auto _ : state) {
    const double v = limitlaw::jw_finite_n_exact(pp, w, n);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_FiniteNExact)->RangeMultiplier(2)->Range(32, 256)->Complexity();

BENCHMARK_MAIN();
