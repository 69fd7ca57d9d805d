#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bandlaw/combinat.hpp"
#include "bandlaw/rng.hpp"
#include "bandlaw/structure.hpp"

namespace bandlaw::limitlaw {

// Midpoint quadrature grid: m nodes (i + 1/2)/m, weight 1/m each. For
// piecewise-constant weights the quadrature error is of order
// jump_count/m; an odd m keeps half-integer jump locations (e.g. 1/2 with
// dyadic breakpoints) off the set of node differences, which would
// otherwise bias every boundary cell in the same direction.
struct QuadGrid {
  int m = 0;
  double node(int i) const { return (i + 0.5) / m; }
};

inline constexpr int kDefaultGridSize = 2047;

// Midpoint value of phi(x) = int_0^1 w^2(|x - y|) dy.
double phi(const structure::WeightFunction& w, double x, const QuadGrid& grid);

// phi_0 = 2 int_0^1 (1 - x) w^2(x) dx by midpoint rule. The limiting
// variance; must agree with integrate_phi up to twice the grid error.
double phi0(const structure::WeightFunction& w, const QuadGrid& grid);

// (1/m) sum_i phi(x_i), i.e. the double midpoint sum of w^2(|x - y|) over
// the grid, reduced to a single pass over node differences: equal node
// pairs contribute w^2(0)/m, and each difference d/m occurs in 2(m - d)
// ordered pairs. O(m) instead of O(m^2), same value up to rounding.
double integrate_phi(const structure::WeightFunction& w, const QuadGrid& grid);

// w^2 kernel matrix on the grid, built once per (w, grid) and reused across
// all partitions of all orders (the dominant cost is the m^2 table).
//
// jw evaluates the (k/2+1)-dimensional integral of prod w^2(|x_r - x_s|)
// over the backtracking tree's edges by message passing: a leaf sends the
// all-ones vector, a vertex sends K times the elementwise product of its
// children's messages, and the root averages the product of its children's
// messages over the grid. Integrating a leaf applies K to ones, i.e.
// produces phi on the grid, so this implements the one-edge-at-a-time
// recursion exactly.
class Kernel {
 public:
  Kernel(const structure::WeightFunction& w, const QuadGrid& grid);

  double jw(const combinat::PairPartition& pp) const;           // rooted at vertex 1
  double jw_rooted(const combinat::PairPartition& pp, int root) const;
  double limit_moment(int k) const;  // 0 for odd k, else sum over NCPP(k)
  const QuadGrid& grid() const { return grid_; }
  double phi_at_node(int i) const { return phi_[i]; }

 private:
  std::vector<double> matvec(const std::vector<double>& v) const;

  QuadGrid grid_;
  std::vector<double> k_;    // m*m, K[i][j] = w^2(|x_i - x_j|)/m
  std::vector<double> phi_;  // K * ones
};

double jw(const combinat::PairPartition& pp, const structure::WeightFunction& w,
          const QuadGrid& grid);
double limit_moment(int k, const structure::WeightFunction& w, const QuadGrid& grid);

// Limit moments of the ESD: odd orders vanish, even orders are sums of
// jw over non-crossing pair partitions.
struct LimitMoments {
  int kmax = 0;
  std::map<int, double> values;  // k -> moment, k = 1..kmax
};
LimitMoments compute_limit_moments(const structure::WeightFunction& w, int kmax,
                                   const QuadGrid& grid);

// Semicircle characterization: w^2 symmetric about 1/2 on the grid
// (node i vs node m-1-i) and phi constant on the grid. Both equivalent
// characterizations are checked; the verdict requires both, the
// diagnostics expose any disagreement (possible only through grid error).
struct SclReport {
  bool verdict = false;
  double max_asymmetry = 0.0;  // max_i |w^2(x_i) - w^2(x_{m-1-i})|
  double phi_range = 0.0;      // max phi - min phi over the grid
};
SclReport is_semicircle(const structure::WeightFunction& w, const QuadGrid& grid, double tol);

// Finite-n counterpart of jw: average of prod w(|t_i - t_j|/n) over all
// injective vertex embeddings of the backtracking tree into [n], divided
// by n^(k/2+1). Exact mode enumerates all embeddings; the work is
// n^(k/2+1) and must stay below kFiniteNExactBudget (an error suggesting
// Monte Carlo mode is thrown otherwise).
inline constexpr double kFiniteNExactBudget = 3e8;

double jw_finite_n_exact(const combinat::PairPartition& pp,
                         const structure::WeightFunction& w, int n);
// Monte Carlo mode: uniform injective samples, scaled by
// #embeddings / n^(k/2+1) = n(n-1)...(n-k/2) / n^(k/2+1).
double jw_finite_n_mc(const combinat::PairPartition& pp, const structure::WeightFunction& w,
                      int n, std::int64_t samples, ensembles::RngStream& rng);

}  // namespace bandlaw::limitlaw
