#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "bandlaw/structure.hpp"
#include "testutil.hpp"

using namespace bandlaw;
using namespace bandlaw::structure;
using bandlaw::ensembles::EnsembleSample;
using bandlaw::ensembles::IidDist;
using bandlaw::ensembles::RngStream;
using bandlaw::ensembles::sample_iid;

namespace {

EnsembleSample all_ones(int n) {
  EnsembleSample s;
  s.n = n;
  s.entries = Matrix(n, n, 1.0);
  s.ensemble_id = "ones";
  return s;
}

// Distinct values everywhere (up to symmetry); lets tests trace which base
// entry each output position came from.
EnsembleSample tagged(int n) {
  EnsembleSample s;
  s.n = n;
  s.entries = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.entries.set_symmetric(i, j, 1000.0 * i + j + 1);
  s.ensemble_id = "tagged";
  return s;
}

}  // namespace

TEST_CASE("band_relevant matches the 8x8 bandwidth-5 display") {
  // 1-based (1,8) and (1,4) from the display are (0,7) and (0,3) here.
  CHECK(band_relevant(0, 7, 8, 5));
  CHECK_FALSE(band_relevant(0, 3, 8, 5));
  for (int p = 0; p < 9; ++p)
    for (int q = 0; q < 9; ++q) CHECK(band_relevant(p, q, 9, 9));
  CHECK_THROWS_AS(band_relevant(0, 0, 8, 4), std::invalid_argument);   // even b < n
  CHECK_THROWS_AS(band_relevant(0, 0, 8, 9), std::invalid_argument);   // b > n
  CHECK_THROWS_AS(band_relevant(0, 0, 8, -1), std::invalid_argument);
}

TEST_CASE("band_relevant is equivalent to the halfwidth characterization") {
  for (int n = 1; n <= 12; ++n)
    for (int h = 1; h <= n; ++h) {
      const int b = std::min(2 * h - 1, n);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const int d = std::abs(p - q);
          const bool alt = d <= h - 1 || d >= std::max(n - h + 1, h);
          CHECK(band_relevant(p, q, n, b) == alt);
        }
    }
}

TEST_CASE("periodic band zero pattern equals the 8x8 display mask") {
  const auto s = all_ones(8);
  const auto m = build_periodic_band(s, BandSpec::periodic_band(8, 3));  // b = 5
  const int mask[8][8] = {
      {1, 1, 1, 0, 0, 0, 1, 1}, {1, 1, 1, 1, 0, 0, 0, 1}, {1, 1, 1, 1, 1, 0, 0, 0},
      {0, 1, 1, 1, 1, 1, 0, 0}, {0, 0, 1, 1, 1, 1, 1, 0}, {0, 0, 0, 1, 1, 1, 1, 1},
      {1, 0, 0, 0, 1, 1, 1, 1}, {1, 1, 0, 0, 0, 1, 1, 1}};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      CHECK(m.values(i, j) == doctest::Approx(mask[i][j] / std::sqrt(5.0)));
}

TEST_CASE("periodic band degenerate cases: full and diagonal") {
  RngStream rng(3, 0);
  const auto s = sample_iid(IidDist::rademacher, 9, rng);
  const auto full = build_periodic_band(s, BandSpec::periodic_band(9, 5));  // b = 9 = n
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(full.values(i, j) == doctest::Approx(s.entries(i, j) / 3.0));
  const auto diag = build_periodic_band(s, BandSpec::periodic_band(9, 1));  // b = 1
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j)
      CHECK(diag.values(i, j) == doctest::Approx(i == j ? s.entries(i, i) : 0.0));
}

TEST_CASE("non-periodic band patterns match the 6x6 displays") {
  const auto s = all_ones(6);
  const auto h2 = build_nonperiodic_band(s, BandSpec::nonperiodic_band(6, 2));
  const auto h4 = build_nonperiodic_band(s, BandSpec::nonperiodic_band(6, 4));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CHECK((h2.values(i, j) != 0.0) == (std::abs(i - j) <= 1));
      CHECK((h4.values(i, j) != 0.0) == (std::abs(i - j) <= 3));
    }
  // corners of the h = 4 display are zero: (1,5), (1,6), (2,6) 1-based
  CHECK(h4.values(0, 4) == 0.0);
  CHECK(h4.values(0, 5) == 0.0);
  CHECK(h4.values(1, 5) == 0.0);

  RngStream rng(4, 0);
  const auto r = sample_iid(IidDist::std_gaussian, 7, rng);
  const auto np_full = build_nonperiodic_band(r, BandSpec::nonperiodic_band(7, 7));
  const auto p_full = build_periodic_band(r, BandSpec::periodic_band(7, 7));
  CHECK(np_full.values == p_full.values);
}

TEST_CASE("zero pattern invariant: nonzero exactly on relevant pairs") {
  RngStream rng(5, 0);
  const auto s = sample_iid(IidDist::std_gaussian, 20, rng);
  for (int h : {1, 2, 5, 10, 17, 20}) {
    const auto p = build_periodic_band(s, BandSpec::periodic_band(20, h));
    const auto np = build_nonperiodic_band(s, BandSpec::nonperiodic_band(20, h));
    const int b = std::min(2 * h - 1, 20);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        CHECK((p.values(i, j) != 0.0) == band_relevant(i, j, 20, b));
        CHECK((np.values(i, j) != 0.0) == (std::abs(i - j) <= h - 1));
      }
    CHECK(p.values.is_symmetric());
    CHECK(np.values.is_symmetric());
  }
}

TEST_CASE("rank of periodic minus non-periodic difference") {
  RngStream rng(6, 0);
  const int n = 60;
  const auto s = sample_iid(IidDist::std_gaussian, n, rng);
  for (int h : {1, 2, 5, 17, 30, 45, 59, 60}) {
    const auto p = build_periodic_band(s, BandSpec::periodic_band(n, h));
    const auto np = build_nonperiodic_band(s, BandSpec::nonperiodic_band(n, h));
    Matrix diff(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) diff(i, j) = p.values(i, j) - np.values(i, j);
    const int r = matrix_rank(diff);
    // generic corners have triangular shape min(h-1, n-h) on each side
    CHECK(r == 2 * std::max(0, std::min(h - 1, n - h)));
    CHECK(r <= 2 * std::min(h, n - h + 1));
  }
}

TEST_CASE("weighted matrix: uniform weight, band indicator, multi-band example") {
  RngStream rng(7, 0);
  const auto s = sample_iid(IidDist::std_gaussian, 10, rng);
  const auto full = build_weighted(s, WeightFunction::constant(1.0));
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(full.values(i, j) == doctest::Approx(s.entries(i, j) / std::sqrt(10.0)));

  const auto band = build_weighted(s, WeightFunction::indicator_union({{0.0, 0.3}}));
  CHECK(band.values(0, 5) == 0.0);  // |i-j|/n = 0.5 > 0.3
  CHECK(band.values(0, 3) != 0.0);  // 0.3 <= 0.3

  const auto w4 = WeightFunction::indicator_union(
      {{0.1, 0.2}, {0.3, 0.4}, {0.6, 0.7}, {0.8, 0.9}});
  const auto m = build_weighted(s, w4);
  // entry (1,4) 1-based: |i-j|/n = 0.3, inside the second interval
  CHECK(m.values(0, 3) == doctest::Approx(s.entries(0, 3) / std::sqrt(10.0)));
  // entry (1,6) 1-based: 0.5 between intervals
  CHECK(m.values(0, 5) == 0.0);
}

TEST_CASE("weight function kinds and validation") {
  CHECK_THROWS_AS(WeightFunction::indicator_union({{-0.1, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFunction::indicator_union({{0.6, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightFunction::piecewise_constant({0.0, 0.5}, {1.0, 2.0}),
                  std::invalid_argument);
  const auto pw = WeightFunction::piecewise_constant({0.0, 0.25, 1.0}, {2.0, -0.5});
  CHECK(pw(0.1) == 2.0);
  CHECK(pw(0.25) == -0.5);
  CHECK(pw(1.0) == -0.5);
  CHECK(pw.bound() == 2.0);
  const auto tab = WeightFunction::tabulated({1.0, 0.0, 1.0, 0.0});
  CHECK(tab(0.1) == 1.0);
  CHECK(tab(0.3) == 0.0);
  CHECK(tab(0.99) == 0.0);
}

TEST_CASE("trivial relation: class count, e-counts") {
  const auto rel = make_equivalence(RelationKind::trivial, 1, 10);
  CHECK(rel.n() == 10);
  CHECK(rel.class_count() == 10 * 11 / 2);
  for (int p = 0; p < 10; ++p)
    for (int q = 0; q < 10; ++q) CHECK(rel.class_of(p, q) == rel.class_of(q, p));
  const auto rep = verify_conditions(rel);
  CHECK(rep.e3_count == 0);
  // (p,q) ~ (r,s) forces {r,s} = {p,q}; given r there is at most one s
  CHECK(rep.e2_max == 1);
  // classes have size 1 (diagonal) or 2, so e1 = sum over q <= 2n
  CHECK(rep.e1_max == 2 * 10 - 1);
}

TEST_CASE("toeplitz relation: spec positions, E2 bound, E1 decay") {
  const auto rel = make_equivalence(RelationKind::toeplitz_block, 3, 2);
  CHECK(rel.n() == 6);
  // 1-based (1,3) and (3,5): same super-diagonal, same within-block offset
  CHECK(rel.class_of(0, 2) == rel.class_of(2, 4));
  CHECK(rel.class_of(1, 3) == rel.class_of(3, 5));  // same cell, next block down
  CHECK(rel.class_of(0, 2) != rel.class_of(1, 3));  // distinct cells of the same block
  CHECK(rel.class_of(0, 2) != rel.class_of(0, 4));  // different diagonal
  CHECK(rel.class_of(0, 2) == rel.class_of(2, 0));  // transposition closure

  for (int bn : {10, 15}) {
    for (int k : {2, 3}) {
      const auto r = make_equivalence(RelationKind::toeplitz_block, k, bn);
      const auto rep = verify_conditions(r);
      CHECK(rep.e2_max <= 2);
    }
  }
  // e1_max / n^2 -> 0 along growing n
  double prev_ratio = 1e300;
  for (int bn : {10, 20, 30}) {
    const auto r = make_equivalence(RelationKind::toeplitz_block, 2, bn);
    const auto rep = verify_conditions(r);
    const double ratio = static_cast<double>(rep.e1_max) / (r.n() * r.n());
    CHECK(ratio < prev_ratio);
    prev_ratio = ratio;
  }
}

TEST_CASE("hankel relation: grid layout and E2 bound") {
  const auto rel = make_equivalence(RelationKind::hankel_block, 3, 4);
  CHECK(rel.n() == 8);  // (k+1)/2 = 2 blocks per side
  // skew diagonal: block (0,1) and (1,0) carry the same A2 cells transposed
  CHECK(rel.class_of(0, 4) == rel.class_of(4, 0));
  const auto rep = verify_conditions(rel);
  CHECK(rep.e2_max <= 2);
  CHECK_THROWS_AS(make_equivalence(RelationKind::hankel_block, 4, 4), std::invalid_argument);
}

TEST_CASE("homogeneous relation: e3 count formula") {
  const int k = 3, bn = 10;
  const auto rel = make_equivalence(RelationKind::homogeneous_block, k, bn);
  const int n = rel.n();
  CHECK(n == 30);
  const auto rep = verify_conditions(rel);
  const std::int64_t offdiag_cells =
      static_cast<std::int64_t>(n) * n - static_cast<std::int64_t>(k) * bn * bn;
  CHECK(rep.e3_count == offdiag_cells * (k - 2));
  // e3/n^2 stays bounded away from zero as blocks grow
  const auto rel2 = make_equivalence(RelationKind::homogeneous_block, k, 2 * bn);
  const auto rep2 = verify_conditions(rel2);
  const double r1 = static_cast<double>(rep.e3_count) / (n * n);
  const double r2 = static_cast<double>(rep2.e3_count) / (rel2.n() * rel2.n());
  CHECK(r2 == doctest::Approx(r1).epsilon(1e-12));
}

TEST_CASE("apply_equivalence: identity for trivial, copies for blocks") {
  const auto base = tagged(6);
  const auto trivial = make_equivalence(RelationKind::trivial, 1, 6);
  const auto same = apply_equivalence(base, trivial);
  CHECK(same.entries == base.entries);

  const int bn = 3;
  const auto toep = make_equivalence(RelationKind::toeplitz_block, 3, bn);
  const auto rep = apply_equivalence(tagged(9), toep);
  CHECK(rep.entries.is_symmetric());
  // diagonal blocks repeat A1, off-diagonal blocks repeat the same cell of
  // A2 along the super-diagonal
  CHECK(rep.entries(0, 1) == rep.entries(bn, bn + 1));
  CHECK(rep.entries(0, bn) == rep.entries(bn, 2 * bn));
  CHECK(rep.entries(1, bn + 2) == rep.entries(bn + 1, 2 * bn + 2));
  CHECK(rep.entries(0, bn) != rep.entries(1, bn + 1));

  const auto hom = make_equivalence(RelationKind::homogeneous_block, 3, bn);
  const auto h = apply_equivalence(tagged(9), hom);
  // all diagonal blocks equal A, all off-diagonal carry B cells
  CHECK(h.entries(0, 1) == h.entries(bn, bn + 1));
  CHECK(h.entries(0, bn + 1) == h.entries(0, 2 * bn + 1));
  std::set<double> distinct;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) distinct.insert(h.entries(i, j));
  CHECK(static_cast<int>(distinct.size()) == hom.class_count());

  CHECK_THROWS_AS(apply_equivalence(tagged(5), hom), std::invalid_argument);
}

TEST_CASE("custom relation from a class map") {
  // one class per |p - q|: a scalar-Toeplitz identification
  const int n = 8;
  std::vector<int> map(n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) map[p * n + q] = std::abs(p - q);
  const auto rel = EquivalenceRelation::from_class_map(n, map);
  CHECK(rel.kind() == RelationKind::custom);
  CHECK(rel.class_count() == n);
  CHECK(rel.class_of(0, 3) == rel.class_of(2, 5));
  const auto rep = verify_conditions(rel);
  CHECK(rep.e2_max == 2);  // given r, two s with |r - s| = |p - q|
  CHECK(rep.e3_count > 0);

  std::vector<int> bad = map;
  bad[0 * n + 1] = 99;  // breaks (p,q) ~ (q,p)
  CHECK_THROWS_AS(EquivalenceRelation::from_class_map(n, bad), std::invalid_argument);
}

TEST_CASE("block matrices: assembly, normalization, symmetry requirements") {
  const int bn = 3;
  Matrix A(bn, bn), B(bn, bn), A2(bn, bn), A3(bn, bn);
  RngStream rng(8, 0);
  for (int i = 0; i < bn; ++i)
    for (int j = i; j < bn; ++j) {
      A.set_symmetric(i, j, rng.normal());
      A3.set_symmetric(i, j, rng.normal());
    }
  for (int i = 0; i < bn; ++i)
    for (int j = 0; j < bn; ++j) {
      B(i, j) = rng.normal();
      A2(i, j) = rng.normal();
    }

  const auto single = build_block_matrix(BlockKind::homogeneous, {A, B}, 1);
  CHECK(single.n == bn);
  for (int i = 0; i < bn; ++i)
    for (int j = 0; j < bn; ++j)
      CHECK(single.values(i, j) == doctest::Approx(A(i, j) / std::sqrt(3.0)));

  const auto toep = build_block_matrix(BlockKind::toeplitz, {A, B}, 2);
  CHECK(toep.n == 2 * bn);
  const double s2 = std::sqrt(2.0 * bn);
  for (int i = 0; i < bn; ++i)
    for (int j = 0; j < bn; ++j) {
      CHECK(toep.values(i, j) == doctest::Approx(A(i, j) / s2));
      CHECK(toep.values(i, bn + j) == doctest::Approx(B(i, j) / s2));
      CHECK(toep.values(bn + i, j) == doctest::Approx(B(j, i) / s2));
      CHECK(toep.values(bn + i, bn + j) == doctest::Approx(A(i, j) / s2));
    }

  const auto hank = build_block_matrix(BlockKind::hankel, {A, A2, A3}, 3);
  CHECK(hank.n == 2 * bn);
  for (int i = 0; i < bn; ++i)
    for (int j = 0; j < bn; ++j) {
      CHECK(hank.values(i, j) == doctest::Approx(A(i, j) / s2));
      CHECK(hank.values(i, bn + j) == doctest::Approx(A2(i, j) / s2));
      CHECK(hank.values(bn + i, j) == doctest::Approx(A2(j, i) / s2));
      CHECK(hank.values(bn + i, bn + j) == doctest::Approx(A3(i, j) / s2));
    }

  const auto hom = build_block_matrix(BlockKind::homogeneous, {A, B}, 3);
  CHECK(hom.n == 3 * bn);
  CHECK(hom.values.is_symmetric());

  CHECK_THROWS_AS(build_block_matrix(BlockKind::hankel, {A, A2, A3, B}, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_block_matrix(BlockKind::toeplitz, {B, A}, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_block_matrix(BlockKind::homogeneous, {B, A}, 2), std::invalid_argument);
}
