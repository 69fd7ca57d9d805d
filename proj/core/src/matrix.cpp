#include "bandlaw/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace bandlaw {

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::frobenius_sq() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return s;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

int matrix_rank(Matrix a, double tol) {
  const int m = a.rows(), n = a.cols();
  if (m == 0 || n == 0) return 0;
  if (tol < 0) tol = 1e-10 * std::max(m, n) * a.max_abs();
  int rank = 0;
  for (int col = 0; col < n && rank < m; ++col) {
    int pivot = rank;
    for (int i = rank + 1; i < m; ++i)
      if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
    if (std::abs(a(pivot, col)) <= tol) continue;
    if (pivot != rank)
      for (int j = col; j < n; ++j) std::swap(a(pivot, j), a(rank, j));
    for (int i = rank + 1; i < m; ++i) {
      const double f = a(i, col) / a(rank, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

}  // namespace bandlaw
