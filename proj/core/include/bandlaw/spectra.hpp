#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "bandlaw/matrix.hpp"
#include "bandlaw/structure.hpp"

namespace bandlaw::spectra {

// Sorted spectrum of one matrix; the carrier of its ESD.
struct SpectralResult {
  int n = 0;
  std::vector<double> eigenvalues;  // ascending
  std::string source;
};

// Full spectrum of a dense symmetric matrix: Householder tridiagonalization
// followed by implicit-shift QL (Wilkinson shift). The input is consumed.
// Throws NumericError if a QL eigenvalue needs more than 50 sweeps.
std::vector<double> symmetric_eigenvalues(Matrix a);

// Eigenvalues and orthonormal eigenvectors (column k of `vectors` pairs with
// values[k]). Slower; used by tests for the Q Lambda Q^T residual oracle.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};
EigenDecomposition symmetric_eigendecomposition(Matrix a);

SpectralResult eigenvalues_symmetric(const structure::StructuredMatrix& m);

// (1/n) sum lambda_i^k
double esd_moment(const SpectralResult& r, int k);

// Exact two-sided Kolmogorov-Smirnov distance between the ESD and a
// monotone CDF: sup_i max(|i/n - F(l_i)|, |(i-1)/n - F(l_i)|).
double ks_distance(const SpectralResult& r, const std::function<double(double)>& cdf);

// Semicircle reference law, radius 2 (unit variance).
double semicircle_density(double x);
double semicircle_cdf(double x);
double semicircle_moment(int k);  // Catalan(k/2) for even k, 0 for odd

// (1/n) sum 1/(lambda_i - z), Im z > 0 required.
std::complex<double> stieltjes(const SpectralResult& r, std::complex<double> z);

}  // namespace bandlaw::spectra
