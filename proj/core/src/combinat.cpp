#include "bandlaw/combinat.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bandlaw::combinat {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

int SetPartition::block_count() const {
  int m = -1;
  for (int a : assignment) m = std::max(m, a);
  return m + 1;
}

bool SetPartition::valid() const {
  if (static_cast<int>(assignment.size()) != k || k < 1) return false;
  if (assignment[0] != 0) return false;
  int max_label = 0;
  for (int i = 1; i < k; ++i) {
    if (assignment[i] < 0 || assignment[i] > max_label + 1) return false;
    max_label = std::max(max_label, assignment[i]);
  }
  return true;
}

PairPartition PairPartition::from_blocks(int k, const std::vector<std::pair<int, int>>& blocks) {
  PairPartition pp;
  pp.k = k;
  pp.mate.assign(k, -1);
  for (auto [a, b] : blocks) {
    require(a >= 0 && a < k && b >= 0 && b < k && a != b, "pair partition: block out of range");
    require(pp.mate[a] == -1 && pp.mate[b] == -1, "pair partition: element matched twice");
    pp.mate[a] = b;
    pp.mate[b] = a;
  }
  require(pp.valid(), "pair partition: not a perfect matching");
  return pp;
}

std::vector<std::pair<int, int>> PairPartition::blocks() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < k; ++i)
    if (mate[i] > i) out.emplace_back(i, mate[i]);
  return out;
}

bool PairPartition::valid() const {
  if (static_cast<int>(mate.size()) != k || k < 2 || k % 2 != 0) return false;
  for (int i = 0; i < k; ++i) {
    if (mate[i] < 0 || mate[i] >= k || mate[i] == i) return false;
    if (mate[mate[i]] != i) return false;
  }
  return true;
}

std::string PairPartition::to_string() const {
  std::string s;
  for (auto [a, b] : blocks())
    s += "{" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "}";
  return s;
}

int Profile::weighted_sum() const {
  int s = 0;
  for (int l = 1; l <= static_cast<int>(counts.size()); ++l) s += l * counts[l - 1];
  return s;
}

std::vector<SetPartition> enumerate_set_partitions(int k) {
  if (k < 1 || k > kMaxSetPartitionOrder)
    throw std::out_of_range("enumerate_set_partitions: k must be in [1, " +
                            std::to_string(kMaxSetPartitionOrder) + "], got " + std::to_string(k));
  std::vector<SetPartition> out;
  std::vector<int> a(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int max_label) {
    if (pos == k) {
      out.push_back(SetPartition{k, a});
      return;
    }
    for (int label = 0; label <= max_label + 1; ++label) {
      a[pos] = label;
      rec(pos + 1, std::max(max_label, label));
    }
  };
  a[0] = 0;
  rec(1, 0);
  return out;
}

std::vector<PairPartition> enumerate_pair_partitions(int k) {
  require(k % 2 == 0, "enumerate_pair_partitions: k must be even");
  if (k < 2 || k > kMaxPairPartitionOrder)
    throw std::out_of_range("enumerate_pair_partitions: k must be in [2, " +
                            std::to_string(kMaxPairPartitionOrder) + "], got " + std::to_string(k));
  std::vector<PairPartition> out;
  std::vector<int> mate(k, -1);
  std::function<void()> rec = [&]() {
    int first = -1;
    for (int i = 0; i < k; ++i)
      if (mate[i] == -1) {
        first = i;
        break;
      }
    if (first == -1) {
      out.push_back(PairPartition{k, mate});
      return;
    }
    for (int j = first + 1; j < k; ++j) {
      if (mate[j] != -1) continue;
      mate[first] = j;
      mate[j] = first;
      rec();
      mate[first] = -1;
      mate[j] = -1;
    }
  };
  rec();
  return out;
}

bool is_crossing(const PairPartition& pp) {
  const auto bl = pp.blocks();
  for (size_t x = 0; x < bl.size(); ++x)
    for (size_t y = x + 1; y < bl.size(); ++y) {
      auto [a, c] = bl[x];
      auto [b, d] = bl[y];
      if (b < a) {
        std::swap(a, b);
        std::swap(c, d);
      }
      // now a < b; crossing iff a < b < c < d
      if (b < c && c < d) return true;
    }
  return false;
}

std::vector<PairPartition> enumerate_ncpp(int k) {
  require(k % 2 == 0, "enumerate_ncpp: k must be even");
  if (k < 2 || k > kMaxNonCrossingOrder)
    throw std::out_of_range("enumerate_ncpp: k must be in [2, " +
                            std::to_string(kMaxNonCrossingOrder) + "], got " + std::to_string(k));
  std::vector<PairPartition> out;
  std::vector<int> mate(k, -1);
  // Pair the first element of [lo, hi) with every mate splitting the range
  // into two even-length pieces, then recurse on both pieces.
  std::function<void(const std::vector<std::pair<int, int>>&)> rec =
      [&](const std::vector<std::pair<int, int>>& ranges) {
        if (ranges.empty()) {
          out.push_back(PairPartition{k, mate});
          return;
        }
        auto [lo, hi] = ranges.back();
        auto rest = ranges;
        rest.pop_back();
        if (lo == hi) {
          rec(rest);
          return;
        }
        for (int j = lo + 1; j < hi; j += 2) {
          mate[lo] = j;
          mate[j] = lo;
          auto next = rest;
          if (j + 1 < hi) next.emplace_back(j + 1, hi);
          if (lo + 1 < j) next.emplace_back(lo + 1, j);
          rec(next);
          mate[lo] = -1;
          mate[j] = -1;
        }
      };
  rec({{0, k}});
  // Deterministic order: sort by mate array lexicographically. This puts the
  // mate of element 1 ascending first, matching the pair-partition order.
  std::sort(out.begin(), out.end(),
            [](const PairPartition& a, const PairPartition& b) { return a.mate < b.mate; });
  return out;
}

BacktrackTree backtracking_path(const PairPartition& pp) {
  require(pp.valid(), "backtracking_path: invalid pair partition");
  require(!is_crossing(pp), "backtracking_path: partition is crossing");
  const int k = pp.k;
  BacktrackTree t;
  t.k = k;
  t.path.assign(k, 0);
  t.path[0] = 1;
  t.path[1] = 2;
  int max_label = 2;
  // Slot l (0-based) is the edge (path[l], path[l+1]). If slot l is paired
  // with an earlier slot l', the walk returns to that slot's start vertex;
  // otherwise it opens a fresh vertex.
  for (int l = 1; l + 1 < k; ++l) {
    const int paired = pp.mate[l];
    if (paired < l) {
      t.path[l + 1] = t.path[paired];
    } else {
      t.path[l + 1] = ++max_label;
    }
  }
  const int vertices = k / 2 + 1;
  require(max_label == vertices, "backtracking_path: walk did not span k/2+1 vertices");

  t.parent.assign(vertices + 1, 0);
  std::vector<std::pair<int, int>> edges;
  int seen_max = 1;
  for (int l = 0; l < k; ++l) {
    const int u = t.path[l];
    const int v = t.path[(l + 1) % k];
    if (v > seen_max) {
      seen_max = v;
      t.parent[v] = u;
      edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  t.edges = std::move(edges);
  return t;
}

Profile profile(std::span<const int> tuple) {
  const int k = static_cast<int>(tuple.size());
  require(k >= 1, "profile: tuple must be non-empty");
  std::map<std::pair<int, int>, int> mult;
  for (int l = 0; l < k; ++l) {
    const int a = tuple[l];
    const int b = tuple[(l + 1) % k];
    ++mult[{std::min(a, b), std::max(a, b)}];
  }
  Profile p;
  p.k = k;
  p.counts.assign(k, 0);
  for (const auto& [edge, m] : mult) ++p.counts[m - 1];
  return p;
}

void CovarianceTable::set(PairIndex a, PairIndex b, double value) {
  if (b < a) std::swap(a, b);
  table_[{a, b}] = value;
}

double CovarianceTable::at(PairIndex a, PairIndex b) const {
  if (b < a) std::swap(a, b);
  auto it = table_.find({a, b});
  if (it == table_.end())
    throw std::out_of_range("covariance missing for ((" + std::to_string(a.p + 1) + "," +
                            std::to_string(a.q + 1) + "),(" + std::to_string(b.p + 1) + "," +
                            std::to_string(b.q + 1) + "))");
  return it->second;
}

namespace {

double wick_rec(const CovarianceTable& cov, std::vector<PairIndex>& v) {
  if (v.empty()) return 1.0;
  double total = 0.0;
  const PairIndex head = v.front();
  for (size_t j = 1; j < v.size(); ++j) {
    const double c = cov.at(head, v[j]);
    std::vector<PairIndex> rest;
    rest.reserve(v.size() - 2);
    for (size_t i = 1; i < v.size(); ++i)
      if (i != j) rest.push_back(v[i]);
    total += c * wick_rec(cov, rest);
  }
  return total;
}

}  // namespace

double wick_moment(const CovarianceTable& cov, std::span<const PairIndex> indices) {
  if (indices.size() % 2 != 0) return 0.0;
  std::vector<PairIndex> v(indices.begin(), indices.end());
  return wick_rec(cov, v);
}

std::int64_t bell_number(int k) {
  require(k >= 0, "bell_number: k must be >= 0");
  // Bell triangle.
  std::vector<std::int64_t> row{1};
  for (int i = 1; i <= k; ++i) {
    std::vector<std::int64_t> next(i + 1);
    next[0] = row.back();
    for (int j = 1; j <= i; ++j) next[j] = next[j - 1] + row[j - 1];
    row = std::move(next);
  }
  return row[0];
}

std::int64_t double_factorial_odd(int k) {
  require(k >= -1 && k % 2 != 0, "double_factorial_odd: k must be odd and >= -1");
  std::int64_t r = 1;
  for (int i = k; i >= 1; i -= 2) r *= i;
  return r;
}

std::int64_t catalan_number(int l) {
  require(l >= 0, "catalan_number: l must be >= 0");
  std::int64_t c = 1;
  for (int i = 0; i < l; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

}  // namespace bandlaw::combinat
