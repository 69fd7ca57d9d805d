#include "bandlaw/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace bandlaw::ensembles {

namespace {

constexpr int kAuxGridSize = 4096;

double log_2cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a));
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::vector<double> sample_iid_values(IidDist dist, std::int64_t count, RngStream& rng) {
  require(count >= 0, "sample_iid_values: count must be >= 0");
  std::vector<double> v(count);
  if (dist == IidDist::rademacher)
    for (auto& x : v) x = rng.rademacher();
  else
    for (auto& x : v) x = rng.normal();
  return v;
}

EnsembleSample sample_iid(IidDist dist, int n, RngStream& rng) {
  require(n >= 1, "sample_iid: n must be >= 1");
  EnsembleSample s;
  s.n = n;
  s.entries = Matrix(n, n);
  s.ensemble_id = dist == IidDist::rademacher ? "rademacher" : "gaussian";
  s.seed = rng.seed();
  s.replica = rng.stream();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = dist == IidDist::rademacher ? rng.rademacher() : rng.normal();
      s.entries.set_symmetric(i, j, v);
    }
  return s;
}

CurieWeissSampler::CurieWeissSampler(double beta, std::int64_t spins)
    : beta_(beta), spins_(spins) {
  require(beta > 0.0 && beta <= 1.0, "curie_weiss: beta must be in (0, 1]");
  require(spins >= 1, "curie_weiss: spin count must be >= 1");
  x_scale_ = std::sqrt(beta / static_cast<double>(spins));
  const double n_d = static_cast<double>(spins);
  const auto log_density = [&](double t) {
    return -0.5 * t * t + n_d * log_2cosh(x_scale_ * t);
  };
  const double peak = log_density(0.0);
  // Widen until the density at the boundary is negligible (e^-60 of the
  // peak). At beta = 1 the auxiliary variable spreads like N^(1/4), so a
  // fixed halfwidth would truncate it.
  double L = 10.0;
  while (log_density(L) - peak > -60.0 && L < 1e9) L *= 2.0;
  halfwidth_ = L;

  nodes_.resize(kAuxGridSize);
  std::vector<double> logf(kAuxGridSize);
  double logf_max = -1e300;
  for (int i = 0; i < kAuxGridSize; ++i) {
    nodes_[i] = -L + 2.0 * L * i / (kAuxGridSize - 1);
    logf[i] = log_density(nodes_[i]);
    logf_max = std::max(logf_max, logf[i]);
  }
  cdf_.assign(kAuxGridSize, 0.0);
  double prev = std::exp(logf[0] - logf_max);
  for (int i = 1; i < kAuxGridSize; ++i) {
    const double cur = std::exp(logf[i] - logf_max);
    cdf_[i] = cdf_[i - 1] + 0.5 * (prev + cur);
    prev = cur;
  }
  const double total = cdf_.back();
  for (auto& c : cdf_) c /= total;
}

double CurieWeissSampler::sample_auxiliary(RngStream& rng) const {
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const int hi = std::min<int>(static_cast<int>(it - cdf_.begin()), kAuxGridSize - 1);
  if (hi == 0) return nodes_.front();
  const int lo = hi - 1;
  const double span = cdf_[hi] - cdf_[lo];
  const double frac = span > 0.0 ? (u - cdf_[lo]) / span : 0.5;
  return nodes_[lo] + frac * (nodes_[hi] - nodes_[lo]);
}

std::vector<double> CurieWeissSampler::sample(RngStream& rng) const {
  const double t = sample_auxiliary(rng);
  const double p_plus = 1.0 / (1.0 + std::exp(-2.0 * x_scale_ * t));
  std::vector<double> spins(spins_);
  for (auto& s : spins) s = rng.uniform01() < p_plus ? 1.0 : -1.0;
  return spins;
}

std::vector<double> sample_curie_weiss_spins(double beta, std::int64_t N, RngStream& rng) {
  return CurieWeissSampler(beta, N).sample(rng);
}

EnsembleSample curie_weiss_scheme(double beta, int n, RngStream& rng) {
  require(n >= 1, "curie_weiss_scheme: n must be >= 1");
  CurieWeissSampler cw(beta, static_cast<std::int64_t>(n) * n);
  const std::vector<double> spins = cw.sample(rng);
  EnsembleSample s;
  s.n = n;
  s.entries = Matrix(n, n);
  s.ensemble_id = "curie_weiss";
  s.seed = rng.seed();
  s.replica = rng.stream();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      s.entries.set_symmetric(i, j, spins[static_cast<size_t>(i) * n + j]);
  return s;
}

std::vector<double> sample_au_gaussian_values(std::int64_t count, double rho, int scale_n,
                                              RngStream& rng) {
  require(rho >= 0.0 && rho <= 1.0, "au_gaussian: rho must be in [0, 1]");
  require(scale_n >= 1, "au_gaussian: scale dimension must be >= 1");
  const double shared_sd = std::sqrt(rho / scale_n);
  const double own_sd = std::sqrt(1.0 - rho / scale_n);
  const double g = rng.normal();
  std::vector<double> v(count);
  for (auto& x : v) x = shared_sd * g + own_sd * rng.normal();
  return v;
}

EnsembleSample sample_au_gaussian(int n, double rho, RngStream& rng) {
  require(n >= 1, "sample_au_gaussian: n must be >= 1");
  const auto values =
      sample_au_gaussian_values(static_cast<std::int64_t>(n) * (n + 1) / 2, rho, n, rng);
  EnsembleSample s;
  s.n = n;
  s.entries = Matrix(n, n);
  s.ensemble_id = "au_gaussian";
  s.seed = rng.seed();
  s.replica = rng.stream();
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.entries.set_symmetric(i, j, values[idx++]);
  return s;
}

MomentEstimate empirical_mixed_moment(const Sampler& sampler,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      const std::vector<int>& powers, int replicas,
                                      const RngStream& base) {
  require(!pairs.empty() && pairs.size() == powers.size(),
          "empirical_mixed_moment: pairs and powers must match and be non-empty");
  require(replicas >= 2, "empirical_mixed_moment: need at least 2 replicas");
  std::set<std::pair<int, int>> seen;
  for (auto [p, q] : pairs) {
    require(std::min(p, q) >= 0, "empirical_mixed_moment: negative index");
    const auto key = std::minmax(p, q);
    require(seen.insert(key).second,
            "empirical_mixed_moment: pairs must be fundamentally different");
  }
  for (int d : powers) require(d >= 1, "empirical_mixed_moment: powers must be >= 1");

  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < replicas; ++r) {
    RngStream rng = base.with_stream(base.stream() + static_cast<std::uint64_t>(r));
    const EnsembleSample s = sampler(rng);
    double prod = 1.0;
    for (size_t i = 0; i < pairs.size(); ++i) {
      require(pairs[i].first < s.n && pairs[i].second < s.n,
              "empirical_mixed_moment: pair index out of range");
      double v = s.entries(pairs[i].first, pairs[i].second);
      double p = 1.0;
      for (int d = 0; d < powers[i]; ++d) p *= v;
      prod *= p;
    }
    sum += prod;
    sum_sq += prod * prod;
  }
  const double mean = sum / replicas;
  const double var = std::max(0.0, sum_sq / replicas - mean * mean);
  return MomentEstimate{mean, std::sqrt(var / replicas)};
}

}  // namespace bandlaw::ensembles
