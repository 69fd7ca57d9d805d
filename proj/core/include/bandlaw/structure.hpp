#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bandlaw/ensembles.hpp"
#include "bandlaw/matrix.hpp"

namespace bandlaw::structure {

// Bounded weight profile w: [0,1] -> R. Piecewise-constant kinds cover the
// band and multi-band models; tabulated covers everything else at grid
// resolution.
class WeightFunction {
 public:
  enum class Kind { indicator_union, piecewise_constant, tabulated };

  // w = 1 on the union of the intervals, 0 elsewhere. Intervals must lie in
  // [0,1] with lo <= hi.
  static WeightFunction indicator_union(std::vector<std::pair<double, double>> intervals);
  // breakpoints 0 = b_0 < ... < b_p = 1; w = values[i] on [b_i, b_{i+1}).
  static WeightFunction piecewise_constant(std::vector<double> breakpoints,
                                           std::vector<double> values);
  // w constant on m uniform cells of [0,1].
  static WeightFunction tabulated(std::vector<double> values);
  static WeightFunction constant(double c);

  double operator()(double x) const;
  double squared(double x) const {
    const double v = (*this)(x);
    return v * v;
  }
  double bound() const { return bound_; }  // W = sup |w|
  Kind kind() const { return kind_; }
  // Number of discontinuities of w^2; drives the documented midpoint-rule
  // error jump_count / grid_m.
  int jump_count() const;

  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }

 private:
  WeightFunction() = default;
  Kind kind_ = Kind::piecewise_constant;
  std::vector<std::pair<double, double>> intervals_;
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  double bound_ = 0.0;
};

// Band geometry. The bandwidth associated with halfwidth h is
// min(2h - 1, n): either n itself or odd and < n.
struct BandSpec {
  int n = 0;
  int halfwidth = 0;
  bool periodic = true;

  int bandwidth() const;
  static BandSpec periodic_band(int n, int halfwidth);
  static BandSpec nonperiodic_band(int n, int halfwidth);
};

// True iff (p,q) lies in the periodic band: b = n, or |p-q| <= (b-1)/2, or
// |p-q| >= n - (b-1)/2. Indices are 0-based; only the difference matters.
// b must be n or odd and in [1, n).
bool band_relevant(int p, int q, int n, int b);

enum class RelationKind { trivial, toeplitz_block, hankel_block, homogeneous_block, custom };
enum class BlockKind { toeplitz, hankel, homogeneous };

// Symmetric-closed equivalence relation on [n]^2, stored densely as class
// ids. class_of(p,q) == class_of(q,p) by construction.
class EquivalenceRelation {
 public:
  int n() const { return n_; }
  int class_count() const { return class_count_; }
  RelationKind kind() const { return kind_; }
  int class_of(int p, int q) const {
    return classes_[static_cast<size_t>(p) * n_ + q];
  }
  // First position (row-major) carrying each class.
  std::pair<int, int> representative(int class_id) const { return reps_[class_id]; }

  // Arbitrary relation from a dense class map (row-major, n*n entries).
  // Ids are relabeled to first-appearance order; rejects maps that violate
  // the (p,q) ~ (q,p) closure.
  static EquivalenceRelation from_class_map(int n, const std::vector<int>& class_of);

  friend EquivalenceRelation make_equivalence(RelationKind kind, int k, int block_n);

 private:
  int n_ = 0;
  int class_count_ = 0;
  RelationKind kind_ = RelationKind::trivial;
  std::vector<std::int32_t> classes_;
  std::vector<std::pair<int, int>> reps_;
};

// Builds the relation induced by the block structure. Dimension is
// k * block_n, except Hankel whose k skew-diagonals arrange into an
// ((k+1)/2) x ((k+1)/2) block grid, so dimension ((k+1)/2) * block_n.
// For trivial, dimension k * block_n with unordered-pair classes.
EquivalenceRelation make_equivalence(RelationKind kind, int k, int block_n);

// Deterministically assembled matrix with its normalization recorded.
struct StructuredMatrix {
  int n = 0;
  Matrix values;  // symmetric
  double normalization = 1.0;
  std::string provenance;
};

// Periodic band: value a(p,q)/sqrt(b) where band_relevant, else 0.
StructuredMatrix build_periodic_band(const ensembles::EnsembleSample& sample,
                                     const BandSpec& spec);
// Non-periodic band: value a(i,j)/sqrt(b) iff |i-j| <= h-1.
StructuredMatrix build_nonperiodic_band(const ensembles::EnsembleSample& sample,
                                        const BandSpec& spec);
// Weighted matrix: value w(|i-j|/n) a(i,j)/sqrt(n).
StructuredMatrix build_weighted(const ensembles::EnsembleSample& sample,
                                const WeightFunction& w);

// Repetition scheme: every entry is replaced by its class representative's
// value, so entries within a class are equal and distinct classes inherit
// the base scheme's decorrelation.
ensembles::EnsembleSample apply_equivalence(const ensembles::EnsembleSample& base,
                                            const EquivalenceRelation& rel);

// Assembles a block matrix from explicit blocks:
//   toeplitz:    blocks A1..Ak (A1 symmetric), dim k*n, scale 1/sqrt(k n)
//   hankel:      k odd, blocks A1..Ak (odd-indexed symmetric),
//                dim ((k+1)/2)*n, scale 1/sqrt(((k+1)/2) n)
//   homogeneous: blocks {A, B} (A symmetric), dim k*n, scale 1/sqrt(k n)
StructuredMatrix build_block_matrix(BlockKind kind, const std::vector<Matrix>& blocks, int k);

struct ConditionReport {
  std::int64_t e1_max = 0;   // max_p #{(q,r,s) : (p,q) ~ (r,s)}
  std::int64_t e2_max = 0;   // max_{p,q,r} #{s : (p,q) ~ (r,s)}
  std::int64_t e3_count = 0;  // #{(p,q,r) : (p,q) ~ (q,r), r != p}
};

// Exact brute force, O(n^4); a correctness oracle, not a production path.
// Keep n below ~60.
ConditionReport verify_conditions(const EquivalenceRelation& rel);

}  // namespace bandlaw::structure
