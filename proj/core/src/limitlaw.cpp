#include "bandlaw/limitlaw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace bandlaw::limitlaw {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_grid(const QuadGrid& grid) {
  require(grid.m >= 64, "quad grid: m must be >= 64");
}

// Children lists of the backtracking tree re-rooted at `root` (vertex
// labels 1..V). The kernel is symmetric, so the rooting does not change the
// integral; tests assert this.
std::vector<std::vector<int>> rooted_children(const combinat::BacktrackTree& tree, int root) {
  const int v_count = tree.vertex_count();
  std::vector<std::vector<int>> adj(v_count + 1);
  for (auto [a, b] : tree.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::vector<int>> children(v_count + 1);
  std::vector<int> stack{root};
  std::vector<bool> seen(v_count + 1, false);
  seen[root] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u])
      if (!seen[v]) {
        seen[v] = true;
        children[u].push_back(v);
        stack.push_back(v);
      }
  }
  return children;
}

}  // namespace

double phi(const structure::WeightFunction& w, double x, const QuadGrid& grid) {
  check_grid(grid);
  require(x >= 0.0 && x <= 1.0, "phi: x must be in [0, 1]");
  double s = 0.0;
  for (int j = 0; j < grid.m; ++j) s += w.squared(std::abs(x - grid.node(j)));
  return s / grid.m;
}

double phi0(const structure::WeightFunction& w, const QuadGrid& grid) {
  check_grid(grid);
  double s = 0.0;
  for (int j = 0; j < grid.m; ++j) {
    const double x = grid.node(j);
    s += (1.0 - x) * w.squared(x);
  }
  return 2.0 * s / grid.m;
}

double integrate_phi(const structure::WeightFunction& w, const QuadGrid& grid) {
  check_grid(grid);
  const int m = grid.m;
  double s = static_cast<double>(m) * w.squared(0.0);
  for (int d = 1; d < m; ++d)
    s += 2.0 * (m - d) * w.squared(static_cast<double>(d) / m);
  return s / (static_cast<double>(m) * m);
}

Kernel::Kernel(const structure::WeightFunction& w, const QuadGrid& grid) : grid_(grid) {
  check_grid(grid);
  const int m = grid.m;
  k_.resize(static_cast<size_t>(m) * m);
  // w^2(|x_i - x_j|) depends only on |i - j| on a uniform grid.
  std::vector<double> by_diff(m);
  for (int d = 0; d < m; ++d) by_diff[d] = w.squared(static_cast<double>(d) / m) / m;
  for (int i = 0; i < m; ++i) {
    double* row = k_.data() + static_cast<size_t>(i) * m;
    for (int j = 0; j < m; ++j) row[j] = by_diff[std::abs(i - j)];
  }
  phi_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = k_.data() + static_cast<size_t>(i) * m;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += row[j];
    phi_[i] = s;
  }
}

std::vector<double> Kernel::matvec(const std::vector<double>& v) const {
  const int m = grid_.m;
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = k_.data() + static_cast<size_t>(i) * m;
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += row[j] * v[j];
    out[i] = s;
  }
  return out;
}

double Kernel::jw(const combinat::PairPartition& pp) const { return jw_rooted(pp, 1); }

double Kernel::jw_rooted(const combinat::PairPartition& pp, int root) const {
  const auto tree = combinat::backtracking_path(pp);  // rejects crossing input
  require(root >= 1 && root <= tree.vertex_count(), "jw: root out of range");
  const auto children = rooted_children(tree, root);
  const int m = grid_.m;

  // Post-order message passing; message(v) = K * prod_c message(c), with the
  // all-ones product for leaves (so a leaf's message is phi on the grid).
  std::function<std::vector<double>(int)> outgoing = [&](int v) -> std::vector<double> {
    if (children[v].empty()) return phi_;  // K * ones
    std::vector<double> prod(m, 1.0);
    for (int c : children[v]) {
      const auto msg = outgoing(c);
      for (int i = 0; i < m; ++i) prod[i] *= msg[i];
    }
    return matvec(prod);
  };

  std::vector<double> prod(m, 1.0);
  for (int c : children[root]) {
    const auto msg = outgoing(c);
    for (int i = 0; i < m; ++i) prod[i] *= msg[i];
  }
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += prod[i];
  return s / m;
}

double Kernel::limit_moment(int k) const {
  require(k >= 1, "limit_moment: k must be >= 1");
  if (k % 2 != 0) return 0.0;
  double s = 0.0;
  for (const auto& pp : combinat::enumerate_ncpp(k)) s += jw(pp);
  return s;
}

double jw(const combinat::PairPartition& pp, const structure::WeightFunction& w,
          const QuadGrid& grid) {
  return Kernel(w, grid).jw(pp);
}

double limit_moment(int k, const structure::WeightFunction& w, const QuadGrid& grid) {
  require(k >= 1, "limit_moment: k must be >= 1");
  if (k % 2 != 0) return 0.0;
  return Kernel(w, grid).limit_moment(k);
}

LimitMoments compute_limit_moments(const structure::WeightFunction& w, int kmax,
                                   const QuadGrid& grid) {
  require(kmax >= 1, "compute_limit_moments: kmax must be >= 1");
  Kernel kernel(w, grid);
  LimitMoments lm;
  lm.kmax = kmax;
  for (int k = 1; k <= kmax; ++k)
    lm.values[k] = k % 2 == 0 ? kernel.limit_moment(k) : 0.0;
  return lm;
}

SclReport is_semicircle(const structure::WeightFunction& w, const QuadGrid& grid, double tol) {
  check_grid(grid);
  require(tol > 0.0, "is_semicircle: tol must be positive");
  const int m = grid.m;
  SclReport rep;
  std::vector<double> w2(m);
  for (int i = 0; i < m; ++i) w2[i] = w.squared(grid.node(i));
  for (int i = 0; i < m; ++i)
    rep.max_asymmetry = std::max(rep.max_asymmetry, std::abs(w2[i] - w2[m - 1 - i]));
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < m; ++i) {
    const double p = phi(w, grid.node(i), grid);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  rep.phi_range = hi - lo;
  const double w_sq_bound = w.bound() * w.bound();
  rep.verdict = rep.max_asymmetry <= tol && rep.phi_range <= tol * std::max(w_sq_bound, 1e-300);
  return rep;
}

namespace {

struct EmbeddingProblem {
  int vertices = 0;
  std::vector<int> parent;        // parent[v], vertex labels 1..V, parent[1] = 0
  std::vector<double> w2_by_diff;  // w^2(d/n)
};

EmbeddingProblem make_problem(const combinat::PairPartition& pp,
                              const structure::WeightFunction& w, int n) {
  const auto tree = combinat::backtracking_path(pp);
  EmbeddingProblem prob;
  prob.vertices = tree.vertex_count();
  prob.parent = tree.parent;
  prob.w2_by_diff.resize(n);
  for (int d = 0; d < n; ++d)
    prob.w2_by_diff[d] = w.squared(static_cast<double>(d) / n);
  return prob;
}

}  // namespace

double jw_finite_n_exact(const combinat::PairPartition& pp,
                         const structure::WeightFunction& w, int n) {
  require(n >= 1, "jw_finite_n: n must be >= 1");
  const auto prob = make_problem(pp, w, n);
  const int v_count = prob.vertices;
  require(n >= v_count, "jw_finite_n: n must be >= k/2 + 1 for injective embeddings");
  double work = 1.0;
  for (int i = 0; i < v_count; ++i) work *= n;
  if (work > kFiniteNExactBudget)
    throw std::invalid_argument(
        "jw_finite_n: exact enumeration needs n^(k/2+1) = " + std::to_string(work) +
        " evaluations (budget " + std::to_string(kFiniteNExactBudget) +
        "); use Monte Carlo mode");

  // Vertices are labeled by first visit, so parent[v] < v: assign them in
  // label order and multiply in the edge to the parent as soon as both ends
  // are placed. Zero partial products prune the whole branch.
  std::vector<int> pos(v_count + 1, -1);
  std::vector<bool> used(n, false);
  double total = 0.0;
  std::function<void(int, double)> rec = [&](int v, double prod) {
    if (v > v_count) {
      total += prod;
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      double p = prod;
      if (v > 1) {
        p *= prob.w2_by_diff[std::abs(i - pos[prob.parent[v]])];
        if (p == 0.0) continue;
      }
      used[i] = true;
      pos[v] = i;
      rec(v + 1, p);
      used[i] = false;
    }
  };
  rec(1, 1.0);
  double denom = 1.0;
  for (int i = 0; i < v_count; ++i) denom *= n;
  return total / denom;
}

double jw_finite_n_mc(const combinat::PairPartition& pp, const structure::WeightFunction& w,
                      int n, std::int64_t samples, ensembles::RngStream& rng) {
  require(n >= 1, "jw_finite_n: n must be >= 1");
  require(samples >= 1, "jw_finite_n: need at least one sample");
  const auto prob = make_problem(pp, w, n);
  const int v_count = prob.vertices;
  require(n >= v_count, "jw_finite_n: n must be >= k/2 + 1 for injective embeddings");

  std::vector<int> pos(v_count + 1, 0);
  double sum = 0.0;
  for (std::int64_t s = 0; s < samples; ++s) {
    // rejection sampling of an injective tuple; collisions are rare for the
    // n used here
    for (int v = 1; v <= v_count; ++v) {
      bool fresh;
      do {
        pos[v] = static_cast<int>(rng.uniform_below(n));
        fresh = true;
        for (int u = 1; u < v; ++u)
          if (pos[u] == pos[v]) {
            fresh = false;
            break;
          }
      } while (!fresh);
    }
    double prod = 1.0;
    for (int v = 2; v <= v_count; ++v)
      prod *= prob.w2_by_diff[std::abs(pos[v] - pos[prob.parent[v]])];
    sum += prod;
  }
  double scale = 1.0;  // #embeddings / n^V
  for (int i = 0; i < v_count; ++i) scale *= static_cast<double>(n - i) / n;
  return (sum / samples) * scale;
}

}  // namespace bandlaw::limitlaw
