#include "bandlaw/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace bandlaw::structure {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

WeightFunction WeightFunction::indicator_union(std::vector<std::pair<double, double>> intervals) {
  WeightFunction w;
  w.kind_ = Kind::indicator_union;
  for (auto [lo, hi] : intervals)
    require(0.0 <= lo && lo <= hi && hi <= 1.0,
            "weight: indicator intervals must satisfy 0 <= lo <= hi <= 1");
  std::sort(intervals.begin(), intervals.end());
  w.intervals_ = std::move(intervals);
  w.bound_ = w.intervals_.empty() ? 0.0 : 1.0;
  return w;
}

WeightFunction WeightFunction::piecewise_constant(std::vector<double> breakpoints,
                                                  std::vector<double> values) {
  WeightFunction w;
  w.kind_ = Kind::piecewise_constant;
  require(breakpoints.size() >= 2 && values.size() + 1 == breakpoints.size(),
          "weight: need p+1 breakpoints for p pieces");
  require(breakpoints.front() == 0.0 && breakpoints.back() == 1.0,
          "weight: breakpoints must start at 0 and end at 1");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    require(breakpoints[i] > breakpoints[i - 1], "weight: breakpoints must be increasing");
  w.breakpoints_ = std::move(breakpoints);
  w.values_ = std::move(values);
  for (double v : w.values_) w.bound_ = std::max(w.bound_, std::abs(v));
  return w;
}

WeightFunction WeightFunction::tabulated(std::vector<double> values) {
  WeightFunction w;
  w.kind_ = Kind::tabulated;
  require(!values.empty(), "weight: tabulated values must be non-empty");
  w.values_ = std::move(values);
  for (double v : w.values_) w.bound_ = std::max(w.bound_, std::abs(v));
  return w;
}

WeightFunction WeightFunction::constant(double c) {
  return piecewise_constant({0.0, 1.0}, {c});
}

double WeightFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::indicator_union: {
      for (auto [lo, hi] : intervals_) {
        if (x < lo) break;
        if (x <= hi) return 1.0;
      }
      return 0.0;
    }
    case Kind::piecewise_constant: {
      if (x >= 1.0) return values_.back();
      auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
      const int idx = std::max<int>(0, static_cast<int>(it - breakpoints_.begin()) - 1);
      return values_[std::min<size_t>(idx, values_.size() - 1)];
    }
    case Kind::tabulated: {
      const int m = static_cast<int>(values_.size());
      int idx = static_cast<int>(x * m);
      idx = std::clamp(idx, 0, m - 1);
      return values_[idx];
    }
  }
  return 0.0;
}

int WeightFunction::jump_count() const {
  switch (kind_) {
    case Kind::indicator_union:
      return 2 * static_cast<int>(intervals_.size());
    case Kind::piecewise_constant: {
      int j = 0;
      for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] != values_[i - 1]) ++j;
      return j;
    }
    case Kind::tabulated:
      return static_cast<int>(values_.size()) - 1;
  }
  return 0;
}

int BandSpec::bandwidth() const { return std::min(2 * halfwidth - 1, n); }

BandSpec BandSpec::periodic_band(int n, int halfwidth) {
  require(n >= 1 && halfwidth >= 1 && halfwidth <= n,
          "band: halfwidth must be in [1, n]");
  return BandSpec{n, halfwidth, true};
}

BandSpec BandSpec::nonperiodic_band(int n, int halfwidth) {
  require(n >= 1 && halfwidth >= 1 && halfwidth <= n,
          "band: halfwidth must be in [1, n]");
  return BandSpec{n, halfwidth, false};
}

bool band_relevant(int p, int q, int n, int b) {
  require(n >= 1 && p >= 0 && p < n && q >= 0 && q < n, "band_relevant: index out of range");
  require(b == n || (b >= 1 && b < n && b % 2 == 1),
          "band_relevant: bandwidth must be n or odd in [1, n)");
  if (b == n) return true;
  const int d = std::abs(p - q);
  const int half = (b - 1) / 2;
  return d <= half || d >= n - half;
}

EquivalenceRelation EquivalenceRelation::from_class_map(int n, const std::vector<int>& class_of) {
  require(n >= 1, "from_class_map: n must be >= 1");
  require(class_of.size() == static_cast<size_t>(n) * n,
          "from_class_map: expected n*n class ids");
  EquivalenceRelation rel;
  rel.n_ = n;
  rel.kind_ = RelationKind::custom;
  rel.classes_.assign(static_cast<size_t>(n) * n, -1);
  std::map<int, int> ids;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int raw = class_of[static_cast<size_t>(p) * n + q];
      require(raw == class_of[static_cast<size_t>(q) * n + p],
              "from_class_map: relation must contain (p,q) ~ (q,p)");
      auto [it, inserted] = ids.try_emplace(raw, static_cast<int>(ids.size()));
      if (inserted) rel.reps_.emplace_back(p, q);
      rel.classes_[static_cast<size_t>(p) * n + q] = it->second;
    }
  rel.class_count_ = static_cast<int>(ids.size());
  return rel;
}

EquivalenceRelation make_equivalence(RelationKind kind, int k, int block_n) {
  require(k >= 1 && block_n >= 1, "make_equivalence: k and block_n must be >= 1");
  require(kind != RelationKind::custom, "make_equivalence: use from_class_map for custom");
  if (kind == RelationKind::hankel_block)
    require(k % 2 == 1, "make_equivalence: hankel requires odd k");

  const int grid = kind == RelationKind::hankel_block ? (k + 1) / 2
                   : kind == RelationKind::trivial    ? 1
                                                      : k;
  const int n = kind == RelationKind::trivial ? k * block_n : grid * block_n;
  const int bn = kind == RelationKind::trivial ? n : block_n;

  EquivalenceRelation rel;
  rel.n_ = n;
  rel.kind_ = kind;
  rel.classes_.assign(static_cast<size_t>(n) * n, -1);

  std::map<std::tuple<int, int, int>, int> ids;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const int bi = p / bn, bj = q / bn;
      const int r = p % bn, c = q % bn;
      std::tuple<int, int, int> key;
      switch (kind) {
        case RelationKind::trivial:
          key = {0, std::min(p, q), std::max(p, q)};
          break;
        case RelationKind::toeplitz_block: {
          const int d = std::abs(bi - bj);
          if (d == 0)
            key = {0, std::min(r, c), std::max(r, c)};  // A1 is symmetric
          else if (bj > bi)
            key = {d, r, c};
          else
            key = {d, c, r};  // transposed block
          break;
        }
        case RelationKind::hankel_block: {
          const int s = bi + bj;  // block carries A^(s+1)
          if (s % 2 == 0)
            key = {s, std::min(r, c), std::max(r, c)};  // odd-indexed blocks are symmetric
          else if (bj > bi)
            key = {s, r, c};
          else
            key = {s, c, r};
          break;
        }
        case RelationKind::homogeneous_block: {
          // Off-diagonal cells are identified with their transposed cell:
          // the relation must contain (p,q) ~ (q,p), and (q,p) lands in the
          // mirrored block at the transposed offset.
          if (bi == bj)
            key = {0, std::min(r, c), std::max(r, c)};
          else
            key = {1, std::min(r, c), std::max(r, c)};
          break;
        }
        case RelationKind::custom:
          break;  // unreachable, rejected above
      }
      auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
      if (inserted) rel.reps_.emplace_back(p, q);
      rel.classes_[static_cast<size_t>(p) * n + q] = it->second;
    }
  }
  rel.class_count_ = static_cast<int>(ids.size());
  return rel;
}

StructuredMatrix build_periodic_band(const ensembles::EnsembleSample& sample,
                                     const BandSpec& spec) {
  require(sample.n == spec.n, "build_periodic_band: sample and spec dimensions differ");
  require(spec.periodic, "build_periodic_band: spec is not periodic");
  const int n = spec.n;
  const int b = spec.bandwidth();
  const double scale = 1.0 / std::sqrt(static_cast<double>(b));
  StructuredMatrix m;
  m.n = n;
  m.values = Matrix(n, n);
  m.normalization = scale;
  m.provenance = "periodic_band(h=" + std::to_string(spec.halfwidth) + ")";
  const int half = (b - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int d = std::abs(i - j);
      if (b == n || d <= half || d >= n - half) m.values(i, j) = sample.entries(i, j) * scale;
    }
  return m;
}

StructuredMatrix build_nonperiodic_band(const ensembles::EnsembleSample& sample,
                                        const BandSpec& spec) {
  require(sample.n == spec.n, "build_nonperiodic_band: sample and spec dimensions differ");
  require(!spec.periodic, "build_nonperiodic_band: spec is periodic");
  const int n = spec.n;
  const int b = spec.bandwidth();
  const double scale = 1.0 / std::sqrt(static_cast<double>(b));
  StructuredMatrix m;
  m.n = n;
  m.values = Matrix(n, n);
  m.normalization = scale;
  m.provenance = "nonperiodic_band(h=" + std::to_string(spec.halfwidth) + ")";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) <= spec.halfwidth - 1) m.values(i, j) = sample.entries(i, j) * scale;
  return m;
}

StructuredMatrix build_weighted(const ensembles::EnsembleSample& sample,
                                const WeightFunction& w) {
  const int n = sample.n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  StructuredMatrix m;
  m.n = n;
  m.values = Matrix(n, n);
  m.normalization = scale;
  m.provenance = "weighted";
  // Same weight along each diagonal: precompute w(d/n).
  std::vector<double> wd(n);
  for (int d = 0; d < n; ++d) wd[d] = w(static_cast<double>(d) / n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m.values(i, j) = wd[std::abs(i - j)] * sample.entries(i, j) * scale;
  return m;
}

ensembles::EnsembleSample apply_equivalence(const ensembles::EnsembleSample& base,
                                            const EquivalenceRelation& rel) {
  require(base.n == rel.n(),
          "apply_equivalence: base sample does not cover the relation's index space "
          "(missing representatives)");
  ensembles::EnsembleSample out;
  out.n = base.n;
  out.entries = Matrix(base.n, base.n);
  out.ensemble_id = base.ensemble_id + "+classes";
  out.seed = base.seed;
  out.replica = base.replica;
  for (int p = 0; p < base.n; ++p)
    for (int q = 0; q < base.n; ++q) {
      const auto [rp, rq] = rel.representative(rel.class_of(p, q));
      out.entries(p, q) = base.entries(rp, rq);
    }
  return out;
}

StructuredMatrix build_block_matrix(BlockKind kind, const std::vector<Matrix>& blocks, int k) {
  require(k >= 1, "build_block_matrix: k must be >= 1");
  const size_t expected = kind == BlockKind::homogeneous ? 2 : static_cast<size_t>(k);
  require(blocks.size() == expected, "build_block_matrix: wrong block count");
  const int bn = blocks[0].rows();
  for (const auto& b : blocks)
    require(b.rows() == bn && b.cols() == bn, "build_block_matrix: blocks must be square, equal size");

  int grid = k;
  if (kind == BlockKind::hankel) {
    require(k % 2 == 1, "build_block_matrix: hankel requires odd k");
    grid = (k + 1) / 2;
  }
  if (kind == BlockKind::toeplitz)
    require(blocks[0].is_symmetric(), "build_block_matrix: toeplitz A1 must be symmetric");
  if (kind == BlockKind::hankel)
    for (int i = 0; i < k; i += 2)
      require(blocks[i].is_symmetric(),
              "build_block_matrix: hankel odd-indexed blocks must be symmetric");
  if (kind == BlockKind::homogeneous)
    require(blocks[0].is_symmetric(), "build_block_matrix: homogeneous A must be symmetric");

  const int n = grid * bn;
  const double scale = 1.0 / std::sqrt(static_cast<double>(grid) * bn);
  StructuredMatrix m;
  m.n = n;
  m.values = Matrix(n, n);
  m.normalization = scale;
  m.provenance = kind == BlockKind::toeplitz      ? "toeplitz_block"
                 : kind == BlockKind::hankel      ? "hankel_block"
                                                  : "homogeneous_block";
  for (int bi = 0; bi < grid; ++bi)
    for (int bj = 0; bj < grid; ++bj) {
      const Matrix* blk = nullptr;
      bool transpose = bj < bi;
      switch (kind) {
        case BlockKind::toeplitz:
          blk = &blocks[std::abs(bi - bj)];
          break;
        case BlockKind::hankel:
          blk = &blocks[bi + bj];
          break;
        case BlockKind::homogeneous:
          blk = bi == bj ? &blocks[0] : &blocks[1];
          transpose = bj < bi && bi != bj;
          break;
      }
      for (int r = 0; r < bn; ++r)
        for (int c = 0; c < bn; ++c) {
          const double v = transpose ? (*blk)(c, r) : (*blk)(r, c);
          m.values(bi * bn + r, bj * bn + c) = v * scale;
        }
    }
  require(m.values.is_symmetric(), "build_block_matrix: assembly is not symmetric");
  return m;
}

ConditionReport verify_conditions(const EquivalenceRelation& rel) {
  const int n = rel.n();
  ConditionReport rep;
  // (E1): max_p #{(q,r,s) : (p,q) ~ (r,s)}
  for (int p = 0; p < n; ++p) {
    std::int64_t count = 0;
    for (int q = 0; q < n; ++q) {
      const int c = rel.class_of(p, q);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
          if (rel.class_of(r, s) == c) ++count;
    }
    rep.e1_max = std::max(rep.e1_max, count);
  }
  // (E2): max_{p,q,r} #{s : (p,q) ~ (r,s)}
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int c = rel.class_of(p, q);
      for (int r = 0; r < n; ++r) {
        std::int64_t count = 0;
        for (int s = 0; s < n; ++s)
          if (rel.class_of(r, s) == c) ++count;
        rep.e2_max = std::max(rep.e2_max, count);
      }
    }
  // (E3): #{(p,q,r) : (p,q) ~ (q,r), r != p}
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const int c = rel.class_of(p, q);
      for (int r = 0; r < n; ++r)
        if (r != p && rel.class_of(q, r) == c) ++rep.e3_count;
    }
  return rep;
}

}  // namespace bandlaw::structure
