#pragma once

#include <cassert>
#include <vector>

namespace bandlaw {

// Dense row-major matrix of doubles. Square symmetric use dominates; the
// rectangular case only appears while assembling blocks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }
  static Matrix zero(int n) { return Matrix(n, n); }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<size_t>(i) * cols_ + j];
  }
  double* row(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
  const double* row(int i) const { return data_.data() + static_cast<size_t>(i) * cols_; }

  // Writes both (i,j) and (j,i); keeps symmetric matrices bit-identical
  // across the diagonal by construction.
  void set_symmetric(int i, int j, double v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  bool is_symmetric(double tol = 0.0) const;
  bool all_finite() const;
  double max_abs() const;
  double trace() const;
  double frobenius_sq() const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Numerical rank via Gaussian elimination with partial pivoting.
// tol < 0 selects 1e-10 * max(rows, cols) * max|entry|.
int matrix_rank(Matrix a, double tol = -1.0);

}  // namespace bandlaw
