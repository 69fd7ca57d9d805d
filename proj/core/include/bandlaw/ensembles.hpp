#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bandlaw/matrix.hpp"
#include "bandlaw/rng.hpp"

namespace bandlaw::ensembles {

// One draw of the symmetric entry array a_n plus provenance.
struct EnsembleSample {
  int n = 0;
  Matrix entries;  // symmetric, bit-identical across the diagonal
  std::string ensemble_id;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
};

enum class IidDist { rademacher, std_gaussian };

// Flat family draws; the building block for block-matrix families.
std::vector<double> sample_iid_values(IidDist dist, std::int64_t count, RngStream& rng);

// i.i.d. upper triangle (diagonal included) mirrored below.
EnsembleSample sample_iid(IidDist dist, int n, RngStream& rng);

// Exact Curie-Weiss sampler. The Gibbs weight exp(beta (sum y)^2 / 2N)
// factorizes over an auxiliary scalar T: draw T from the 1-d density
// proportional to exp(-t^2/2) (2 cosh(sqrt(beta/N) t))^N, then spins are
// i.i.d. with P(+1) = sigmoid(2 sqrt(beta/N) T). Grid inversion of the
// auxiliary CDF makes one spin O(1) after setup.
class CurieWeissSampler {
 public:
  CurieWeissSampler(double beta, std::int64_t spins);
  std::vector<double> sample(RngStream& rng) const;  // entries in {-1, +1}
  double sample_auxiliary(RngStream& rng) const;     // the tilt variable T
  double beta() const { return beta_; }
  std::int64_t spins() const { return spins_; }
  double grid_halfwidth() const { return halfwidth_; }

 private:
  double beta_;
  std::int64_t spins_;
  double x_scale_;    // sqrt(beta / N)
  double halfwidth_;  // grid support [-L, L]
  std::vector<double> nodes_;
  std::vector<double> cdf_;  // normalized cumulative trapezoid
};

// One draw of N spins from Curie-Weiss(beta, N); beta must be in (0, 1].
std::vector<double> sample_curie_weiss_spins(double beta, std::int64_t N, RngStream& rng);

// Curie-Weiss(beta, n^2) spins laid out row-major over [n]^2 and
// symmetrized: a(i,j) = spin(i,j) if i <= j, else spin(j,i).
EnsembleSample curie_weiss_scheme(double beta, int n, RngStream& rng);

// Equicorrelated Gaussian family: value = sqrt(rho/scale_n) G +
// sqrt(1 - rho/scale_n) xi, with one shared G. Unit variance; covariance
// rho/scale_n between distinct members.
std::vector<double> sample_au_gaussian_values(std::int64_t count, double rho, int scale_n,
                                              RngStream& rng);

// Jointly Gaussian upper triangle with covariance
// (1 - rho/n) Id + (rho/n) AllOnes over the n(n+1)/2 entry indices;
// rho must be in [0, 1] so off-diagonal covariances stay within 1/n.
EnsembleSample sample_au_gaussian(int n, double rho, RngStream& rng);

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

using Sampler = std::function<EnsembleSample(RngStream&)>;

// Monte Carlo estimate of E prod_i a(P_i)^{powers[i]} over fundamentally
// different entry positions (0-based, unordered). Replica r draws from
// base.with_stream(base.stream() + r).
MomentEstimate empirical_mixed_moment(const Sampler& sampler,
                                      const std::vector<std::pair<int, int>>& pairs,
                                      const std::vector<int>& powers, int replicas,
                                      const RngStream& base);

}  // namespace bandlaw::ensembles
