#include <benchmark/benchmark.h>

#include "bandlaw/ensembles.hpp"

using namespace bandlaw::ensembles;

static void BM_CurieWeissScheme(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t replica = 0;
  for (auto _ : state) {
    RngStream rng(1, replica++);
    auto s = curie_weiss_scheme(0.5, n, rng);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_CurieWeissScheme)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_AuGaussian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t replica = 0;
  for (auto _ : state) {
    RngStream rng(1, replica++);
    auto s = sample_au_gaussian(n, 0.5, rng);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_AuGaussian)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

static void BM_RngNormal(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_RngNormal);

BENCHMARK_MAIN();
