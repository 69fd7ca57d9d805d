#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bandlaw::combinat {

// Enumeration size caps. The largest order any production path needs is 8
// (moment order in predictions); the caps leave headroom for tests.
inline constexpr int kMaxSetPartitionOrder = 10;
inline constexpr int kMaxPairPartitionOrder = 12;
inline constexpr int kMaxNonCrossingOrder = 16;

// Partition of {0,...,k-1} in restricted-growth form: assignment[0] = 0 and
// each new block label is one more than the running maximum.
struct SetPartition {
  int k = 0;
  std::vector<int> assignment;

  int block_count() const;
  bool valid() const;
};

// Perfect matching of {0,...,k-1}: mate[i] = j iff {i,j} is a block.
// Indices are 0-based internally; reports print them 1-based.
struct PairPartition {
  int k = 0;
  std::vector<int> mate;

  // blocks as 0-based index pairs, e.g. {{0,1},{2,3}}.
  static PairPartition from_blocks(int k, const std::vector<std::pair<int, int>>& blocks);
  std::vector<std::pair<int, int>> blocks() const;  // each with first < second
  bool valid() const;
  std::string to_string() const;  // 1-based, e.g. "{1,2}{3,4}"
};

// Closed walk realizing a non-crossing pair partition as a doubled spanning
// tree on k/2+1 vertices. Vertex labels are 1-based to match the walk
// convention path[0] = 1, path[1] = 2.
struct BacktrackTree {
  int k = 0;
  std::vector<int> path;                      // length k
  std::vector<std::pair<int, int>> edges;     // k/2 unordered pairs, first < second
  std::vector<int> parent;                    // parent[v] for v = 1..k/2+1; parent[1] = 0

  int vertex_count() const { return k / 2 + 1; }
};

// Edge-multiplicity profile of a closed walk: counts[l-1] = number of
// distinct undirected edges traversed exactly l times. Satisfies
// sum_l l * counts[l-1] = k.
struct Profile {
  int k = 0;
  std::vector<int> counts;

  int weighted_sum() const;  // sum_l l * counts[l-1]
  friend bool operator==(const Profile&, const Profile&) = default;
};

// All restricted-growth strings of length k, lexicographic. Count = Bell(k).
std::vector<SetPartition> enumerate_set_partitions(int k);

// All perfect matchings of {0,...,k-1}, ordered by pairing the smallest
// unmatched element with ascending mates. Count = (k-1)!!.
std::vector<PairPartition> enumerate_pair_partitions(int k);

// True iff there are a < b < c < d with {a,c} and {b,d} blocks.
bool is_crossing(const PairPartition& pp);

// All non-crossing pair partitions, generated by recursive interval
// splitting (no crossing filter). Count = Catalan(k/2).
std::vector<PairPartition> enumerate_ncpp(int k);

// Canonical backtracking walk of a non-crossing pair partition: start 1,2;
// an edge paired with an earlier slot returns to that slot's start vertex,
// otherwise a fresh vertex is appended. Throws std::invalid_argument on
// crossing input.
BacktrackTree backtracking_path(const PairPartition& pp);

// Profile of an arbitrary index tuple read as a closed walk (cyclic).
Profile profile(std::span<const int> tuple);

// Matrix-entry index (p,q), unordered: (p,q) and (q,p) are the same entry.
struct PairIndex {
  int p = 0, q = 0;
  PairIndex() = default;
  PairIndex(int p_, int q_) : p(p_ < q_ ? p_ : q_), q(p_ < q_ ? q_ : p_) {}
  friend auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

// Covariance lookup keyed by unordered pairs of PairIndex. Missing entries
// throw std::out_of_range naming the offending key.
class CovarianceTable {
 public:
  void set(PairIndex a, PairIndex b, double value);
  double at(PairIndex a, PairIndex b) const;

 private:
  std::map<std::pair<PairIndex, PairIndex>, double> table_;
};

// Isserlis/Wick sum: for a centered jointly Gaussian family, the expectation
// of a product is the sum over pair partitions of products of covariances.
// Odd-sized index lists give 0; empty gives 1.
double wick_moment(const CovarianceTable& cov, std::span<const PairIndex> indices);

// Counting helpers.
std::int64_t bell_number(int k);
std::int64_t double_factorial_odd(int k);  // (k)!! for odd k >= -1; (-1)!! = 1
std::int64_t catalan_number(int l);

}  // namespace bandlaw::combinat
