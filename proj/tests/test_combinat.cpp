#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "bandlaw/combinat.hpp"
#include "bandlaw/rng.hpp"
#include "testutil.hpp"

using namespace bandlaw::combinat;

TEST_CASE("set partitions match the brute-force restricted-growth oracle") {
  for (int k = 1; k <= 5; ++k) {
    const auto got = enumerate_set_partitions(k);
    const auto expect = testutil::brute_restricted_growth(k);
    REQUIRE(got.size() == expect.size());
    // brute force enumerates label arrays in lexicographic order too
    std::vector<std::vector<int>> got_arrays;
    for (const auto& p : got) {
      CHECK(p.valid());
      got_arrays.push_back(p.assignment);
    }
    CHECK(got_arrays == expect);
  }
  CHECK(enumerate_set_partitions(1).size() == 1);
  CHECK(enumerate_set_partitions(3).size() == 5);
  CHECK(enumerate_set_partitions(4).size() == 15);
}

TEST_CASE("set partition counts are Bell numbers up to the cap") {
  for (int k = 1; k <= kMaxSetPartitionOrder; ++k)
    CHECK(static_cast<std::int64_t>(enumerate_set_partitions(k).size()) == bell_number(k));
  CHECK_THROWS_AS(enumerate_set_partitions(0), std::out_of_range);
  CHECK_THROWS_AS(enumerate_set_partitions(kMaxSetPartitionOrder + 1), std::out_of_range);
  // the bounds error names the limit
  try {
    enumerate_set_partitions(11);
    CHECK(false);
  } catch (const std::out_of_range& e) {
    CHECK(std::string(e.what()).find("10") != std::string::npos);
  }
}

TEST_CASE("pair partition counts are double factorials, order is deterministic") {
  for (int k = 2; k <= kMaxPairPartitionOrder; k += 2) {
    const auto pps = enumerate_pair_partitions(k);
    CHECK(static_cast<std::int64_t>(pps.size()) == double_factorial_odd(k - 1));
    std::set<std::vector<int>> distinct;
    for (const auto& pp : pps) {
      CHECK(pp.valid());
      distinct.insert(pp.mate);
    }
    CHECK(distinct.size() == pps.size());
    // mate of the smallest element ascending
    for (size_t i = 1; i < pps.size(); ++i) CHECK(pps[i - 1].mate <= pps[i].mate);
  }
  CHECK(enumerate_pair_partitions(2).size() == 1);
  CHECK(enumerate_pair_partitions(4).size() == 3);
  CHECK(enumerate_pair_partitions(6).size() == 15);
  CHECK_THROWS_AS(enumerate_pair_partitions(3), std::invalid_argument);
}

TEST_CASE("is_crossing on the canonical order-4 cases") {
  CHECK_FALSE(is_crossing(PairPartition::from_blocks(4, {{0, 1}, {2, 3}})));
  CHECK(is_crossing(PairPartition::from_blocks(4, {{0, 2}, {1, 3}})));
  CHECK_FALSE(is_crossing(PairPartition::from_blocks(4, {{0, 3}, {1, 2}})));
}

TEST_CASE("non-crossing enumeration: Catalan counts and filter cross-check") {
  for (int k = 2; k <= kMaxNonCrossingOrder; k += 2)
    CHECK(static_cast<std::int64_t>(enumerate_ncpp(k).size()) == catalan_number(k / 2));
  CHECK(enumerate_ncpp(4).size() == 2);
  CHECK(enumerate_ncpp(8).size() == 14);
  // recursive generation agrees with filtering the full enumeration
  for (int k = 2; k <= 12; k += 2) {
    std::set<std::vector<int>> filtered;
    for (const auto& pp : enumerate_pair_partitions(k))
      if (!is_crossing(pp)) filtered.insert(pp.mate);
    std::set<std::vector<int>> direct;
    for (const auto& pp : enumerate_ncpp(k)) {
      CHECK_FALSE(is_crossing(pp));
      direct.insert(pp.mate);
    }
    CHECK(filtered == direct);
  }
  CHECK_THROWS_AS(enumerate_ncpp(5), std::invalid_argument);
}

TEST_CASE("backtracking paths of the order-4 partitions and the order-2 edge") {
  const auto t1 = backtracking_path(PairPartition::from_blocks(4, {{0, 1}, {2, 3}}));
  CHECK(t1.path == std::vector<int>{1, 2, 1, 3});
  const auto t2 = backtracking_path(PairPartition::from_blocks(4, {{0, 3}, {1, 2}}));
  CHECK(t2.path == std::vector<int>{1, 2, 3, 2});
  const auto t0 = backtracking_path(PairPartition::from_blocks(2, {{0, 1}}));
  CHECK(t0.path == std::vector<int>{1, 2});
  CHECK(t0.edges == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK_THROWS_AS(backtracking_path(PairPartition::from_blocks(4, {{0, 2}, {1, 3}})),
                  std::invalid_argument);
}

TEST_CASE("backtracking walks are doubled spanning trees") {
  for (int k = 2; k <= 10; k += 2) {
    for (const auto& pp : enumerate_ncpp(k)) {
      const auto t = backtracking_path(pp);
      // k/2 + 1 distinct vertices
      std::set<int> verts(t.path.begin(), t.path.end());
      CHECK(static_cast<int>(verts.size()) == k / 2 + 1);
      // profile (0, k/2, 0, ..., 0): every edge traversed exactly twice
      const auto prof = profile(t.path);
      CHECK(prof.counts[1] == k / 2);
      CHECK(prof.weighted_sum() == k);
      for (int l = 0; l < k; ++l)
        if (l != 1) CHECK(prof.counts[l] == 0);
      // edges form a tree: k/2 edges, connected via parent pointers
      CHECK(t.edges.size() == static_cast<size_t>(k / 2));
      for (int v = 2; v <= t.vertex_count(); ++v) {
        CHECK(t.parent[v] >= 1);
        CHECK(t.parent[v] < v);
      }
    }
  }
}

TEST_CASE("profile of the spec tuples and invariance under relabeling") {
  CHECK(profile(std::vector<int>{1, 2}).counts == std::vector<int>{0, 1});
  CHECK(profile(std::vector<int>{1, 2, 3}).counts == std::vector<int>{3, 0, 0});
  CHECK(profile(std::vector<int>{1, 2, 1, 3}).counts == std::vector<int>{0, 2, 0, 0});

  bandlaw::ensembles::RngStream rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.uniform_below(6));
    std::vector<int> tuple(k);
    for (auto& t : tuple) t = static_cast<int>(rng.uniform_below(5));
    const auto p = profile(tuple);
    CHECK(p.counts == testutil::brute_profile(tuple));
    CHECK(p.weighted_sum() == k);
    // any injective relabeling preserves the profile
    std::vector<int> relabeled(k);
    for (int i = 0; i < k; ++i) relabeled[i] = 31 + 17 * tuple[i];
    CHECK(profile(relabeled).counts == p.counts);
  }
}

TEST_CASE("tuple-set counting bound: #{t : #V(t) <= l} <= k^k n^l with b = n") {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      std::vector<std::int64_t> by_vertex_count(k + 1, 0);
      std::vector<int> tuple(k, 0);
      for (;;) {
        std::set<int> verts(tuple.begin(), tuple.end());
        ++by_vertex_count[verts.size()];
        int pos = k - 1;
        while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
      }
      double kk = 1;
      for (int i = 0; i < k; ++i) kk *= k;
      for (int l = 1; l <= k; ++l) {
        std::int64_t cum = 0;
        for (int v = 1; v <= l && v <= k; ++v) cum += by_vertex_count[v];
        double bound = kk * n;  // k^k * n * b^(l-1), b = n
        for (int i = 1; i < l; ++i) bound *= n;
        CHECK(static_cast<double>(cum) <= bound);
      }
    }
  }
}

TEST_CASE("wick moments: squares, fourth moment, generic four-index sum") {
  CovarianceTable cov;
  PairIndex p(0, 1);
  cov.set(p, p, 1.0);
  CHECK(wick_moment(cov, std::vector<PairIndex>{p, p}) == doctest::Approx(1.0));
  CHECK(wick_moment(cov, std::vector<PairIndex>{p, p, p, p}) == doctest::Approx(3.0));
  CHECK(wick_moment(cov, std::vector<PairIndex>{p}) == 0.0);

  // generic four indices: s12 s34 + s13 s24 + s14 s23
  PairIndex a(0, 1), b(0, 2), c(1, 2), d(2, 3);
  CovarianceTable g;
  const double s12 = 0.3, s13 = -0.2, s14 = 0.11, s23 = 0.07, s24 = -0.4, s34 = 0.5;
  g.set(a, b, s12);
  g.set(a, c, s13);
  g.set(a, d, s14);
  g.set(b, c, s23);
  g.set(b, d, s24);
  g.set(c, d, s34);
  CHECK(wick_moment(g, std::vector<PairIndex>{a, b, c, d}) ==
        doctest::Approx(s12 * s34 + s13 * s24 + s14 * s23).epsilon(1e-12));

  // repeated indices: E x1^2 x2^2 = s11 s22 + 2 s12^2
  CovarianceTable h;
  h.set(a, a, 1.0);
  h.set(b, b, 1.0);
  h.set(a, b, 0.25);
  CHECK(wick_moment(h, std::vector<PairIndex>{a, a, b, b}) ==
        doctest::Approx(1.0 + 2 * 0.25 * 0.25).epsilon(1e-12));

  CHECK_THROWS_AS(wick_moment(h, std::vector<PairIndex>{a, d}), std::out_of_range);
}

TEST_CASE("wick matches Monte Carlo Gaussian moments within 4 standard errors") {
  // equicorrelated mixture: x_i = sqrt(c) G + sqrt(1-c) xi_i
  const double c = 0.3;
  PairIndex idx[4] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  CovarianceTable cov;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) cov.set(idx[i], idx[j], i == j ? 1.0 : c);
  const double predicted = wick_moment(cov, std::vector<PairIndex>(idx, idx + 4));
  CHECK(predicted == doctest::Approx(3 * c * c).epsilon(1e-12));

  bandlaw::ensembles::RngStream rng(2024, 0);
  const int samples = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double g = rng.normal();
    double prod = 1.0;
    for (int i = 0; i < 4; ++i)
      prod *= std::sqrt(c) * g + std::sqrt(1 - c) * rng.normal();
    sum += prod;
    sum_sq += prod * prod;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - predicted) <= 4 * se);
}

TEST_CASE("counting helpers") {
  CHECK(bell_number(0) == 1);
  CHECK(bell_number(5) == 52);
  CHECK(bell_number(10) == 115975);
  CHECK(double_factorial_odd(-1) == 1);
  CHECK(double_factorial_odd(5) == 15);
  CHECK(double_factorial_odd(11) == 10395);
  CHECK(catalan_number(0) == 1);
  CHECK(catalan_number(4) == 14);
  CHECK(catalan_number(8) == 1430);
}
