#include <benchmark/benchmark.h>

#include "bandlaw/ensembles.hpp"
#include "bandlaw/spectra.hpp"

using namespace bandlaw;

static void BM_SymmetricEigenvalues(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ensembles::RngStream rng(1, 0);
  const auto s = ensembles::sample_iid(ensembles::IidDist::std_gaussian, n, rng);
  for (auto _ : state) {
    auto ev = spectra::symmetric_eigenvalues(s.entries);
    benchmark::DoNotOptimize(ev);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SymmetricEigenvalues)->RangeMultiplier(2)->Range(128, 1024)->Complexity();

static void BM_KsDistance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  spectra::SpectralResult r{n, {}, "bench"};
  for (int i = 0; i < n; ++i) r.eigenvalues.push_back(-2.0 + 4.0 * (i + 0.5) / n);
  for (auto _ : state) {
    const double d = spectra::ks_distance(r, spectra::semicircle_cdf);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_KsDistance)->Range(1024, 1 << 16);

BENCHMARK_MAIN();
