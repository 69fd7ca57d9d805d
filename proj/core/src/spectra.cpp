#include "bandlaw/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bandlaw/combinat.hpp"
#include "bandlaw/errors.hpp"

namespace bandlaw::spectra {

namespace {

constexpr int kMaxQlSweeps = 50;

// Householder reduction of a symmetric matrix to tridiagonal form.
// On output d holds the diagonal and e[0..n-2] the subdiagonal. When
// want_vectors is set, a is overwritten with the accumulated orthogonal
// transformation Q.
void householder_tridiag(Matrix& a, std::vector<double>& d, std::vector<double>& e,
                         bool want_vectors) {
  const int n = a.rows();
  d.assign(n, 0.0);
  std::vector<double> sub(n, 0.0);  // sub[i] couples rows i-1 and i

  for (int i = n - 1; i >= 1; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k <= l; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        sub[i] = a(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        sub[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          if (want_vectors) a(j, i) = a(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
          sub[j] = g / h;
          f += sub[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = a(i, j);
          g = sub[j] - hh * f;
          sub[j] = g;
          for (int k = 0; k <= j; ++k) a(j, k) -= f * sub[k] + g * a(i, k);
        }
      }
    } else {
      sub[i] = a(i, l);
    }
    d[i] = h;
  }

  if (want_vectors) {
    d[0] = 0.0;
    sub[0] = 0.0;
    for (int i = 0; i < n; ++i) {
      const int l = i - 1;
      if (d[i] != 0.0) {
        for (int j = 0; j <= l; ++j) {
          double g = 0.0;
          for (int k = 0; k <= l; ++k) g += a(i, k) * a(k, j);
          for (int k = 0; k <= l; ++k) a(k, j) -= g * a(k, i);
        }
      }
      d[i] = a(i, i);
      a(i, i) = 1.0;
      for (int j = 0; j <= l; ++j) {
        a(j, i) = 0.0;
        a(i, j) = 0.0;
      }
    }
  } else {
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
  }

  e.assign(n, 0.0);
  for (int i = 0; i + 1 < n; ++i) e[i] = sub[i + 1];
}

// Implicit-shift QL on a tridiagonal matrix (d diagonal, e subdiagonal with
// e[i] between d[i] and d[i+1]). If z is non-null its columns accumulate the
// eigenvector transformations.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
  const int n = static_cast<int>(d.size());
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) + dd == dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlSweeps)
          throw NumericError("symmetric_eigenvalues: QL did not converge within " +
                             std::to_string(kMaxQlSweeps) + " sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (int k = 0; k < z->rows(); ++k) {
              f = (*z)(k, i + 1);
              (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
              (*z)(k, i) = c * (*z)(k, i) - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

void check_input(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigensolver: matrix must be square");
  if (!a.all_finite()) throw std::invalid_argument("eigensolver: matrix has non-finite entries");
}

}  // namespace

std::vector<double> symmetric_eigenvalues(Matrix a) {
  check_input(a);
  const int n = a.rows();
  if (n == 0) return {};
  std::vector<double> d, e;
  householder_tridiag(a, d, e, false);
  ql_implicit(d, e, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

EigenDecomposition symmetric_eigendecomposition(Matrix a) {
  check_input(a);
  const int n = a.rows();
  std::vector<double> d, e;
  householder_tridiag(a, d, e, true);
  ql_implicit(d, e, &a);
  // sort ascending, permuting columns alongside
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = d[order[c]];
    for (int r = 0; r < n; ++r) out.vectors(r, c) = a(r, order[c]);
  }
  return out;
}

SpectralResult eigenvalues_symmetric(const structure::StructuredMatrix& m) {
  SpectralResult r;
  r.n = m.n;
  r.eigenvalues = symmetric_eigenvalues(m.values);
  r.source = m.provenance;
  return r;
}

double esd_moment(const SpectralResult& r, int k) {
  if (k < 1) throw std::invalid_argument("esd_moment: k must be >= 1");
  double s = 0.0;
  for (double l : r.eigenvalues) {
    double p = 1.0;
    for (int i = 0; i < k; ++i) p *= l;
    s += p;
  }
  return s / r.n;
}

double ks_distance(const SpectralResult& r, const std::function<double(double)>& cdf) {
  const int n = r.n;
  double d = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double f = cdf(r.eigenvalues[i - 1]);
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i - 1) / n - f));
  }
  return d;
}

double semicircle_density(double x) {
  if (x <= -2.0 || x >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * std::numbers::pi);
}

double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * std::numbers::pi) +
         std::asin(x / 2.0) / std::numbers::pi;
}

double semicircle_moment(int k) {
  if (k < 0) throw std::invalid_argument("semicircle_moment: k must be >= 0");
  if (k % 2 != 0) return 0.0;
  return static_cast<double>(combinat::catalan_number(k / 2));
}

std::complex<double> stieltjes(const SpectralResult& r, std::complex<double> z) {
  if (z.imag() <= 0.0) throw std::invalid_argument("stieltjes: Im z must be positive");
  std::complex<double> s = 0.0;
  for (double l : r.eigenvalues) s += 1.0 / (l - z);
  return s / static_cast<double>(r.n);
}

}  // namespace bandlaw::spectra
