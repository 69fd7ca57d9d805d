#pragma once

// Shared test-only helpers: independent oracles and small statistics. These
// deliberately re-derive quantities instead of calling the code under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bandlaw/combinat.hpp"

namespace testutil {

// Restricted-growth strings of length k by brute force: every label array in
// {0..k-1}^k, filtered. Exponential; fine for k <= 5.
inline std::vector<std::vector<int>> brute_restricted_growth(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> a(k, 0);
  for (;;) {
    bool ok = a[0] == 0;
    int max_label = 0;
    for (int i = 1; ok && i < k; ++i) {
      if (a[i] > max_label + 1) ok = false;
      max_label = std::max(max_label, a[i]);
    }
    if (ok) out.push_back(a);
    int pos = k - 1;
    while (pos >= 0 && a[pos] == k - 1) a[pos--] = 0;
    if (pos < 0) break;
    ++a[pos];
  }
  return out;
}

// Edge-multiplicity profile computed directly from the cyclic edge multiset.
inline std::vector<int> brute_profile(const std::vector<int>& tuple) {
  const int k = static_cast<int>(tuple.size());
  std::map<std::pair<int, int>, int> mult;
  for (int l = 0; l < k; ++l) {
    int a = tuple[l], b = tuple[(l + 1) % k];
    if (b < a) std::swap(a, b);
    ++mult[{a, b}];
  }
  std::vector<int> counts(k, 0);
  for (const auto& [e, m] : mult) ++counts[m - 1];
  return counts;
}

// AHU canonical code of the backtracking tree; equal codes = isomorphic
// trees, which must give equal kernel integrals.
inline std::string ahu_code(const bandlaw::combinat::BacktrackTree& t) {
  const int v = t.vertex_count();
  std::vector<std::vector<int>> adj(v + 1);
  for (auto [a, b] : t.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Root at a centroid for a rooting-independent code.
  std::vector<int> size(v + 1, 0);
  auto subtree_size = [&](auto&& self, int u, int parent) -> int {
    size[u] = 1;
    for (int w : adj[u])
      if (w != parent) size[u] += self(self, w, u);
    return size[u];
  };
  subtree_size(subtree_size, 1, 0);
  int centroid = 1, best = v + 1;
  auto find_centroid = [&](auto&& self, int u, int parent) -> void {
    int heaviest = v - size[u];
    for (int w : adj[u])
      if (w != parent) heaviest = std::max(heaviest, size[w]);
    if (heaviest < best) {
      best = heaviest;
      centroid = u;
    }
    for (int w : adj[u])
      if (w != parent) self(self, w, u);
  };
  find_centroid(find_centroid, 1, 0);
  auto encode = [&](auto&& self, int u, int parent) -> std::string {
    std::vector<std::string> kids;
    for (int w : adj[u])
      if (w != parent) kids.push_back(self(self, w, u));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& kid : kids) s += kid;
    return s + ")";
  };
  return encode(encode, centroid, 0);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  double s = 0.0;
  for (double x : xs) s += x;
  MeanSe r;
  r.mean = s / n;
  if (n < 2) return r;
  double v = 0.0;
  for (double x : xs) v += (x - r.mean) * (x - r.mean);
  r.se = std::sqrt(v / (n - 1) / n);
  return r;
}

}  // namespace testutil
