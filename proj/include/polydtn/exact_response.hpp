#pragma once

// Response (Dirichlet-to-Neumann) matrix of the regular 2n-gon whose
// even-numbered sides are electrodes and odd-numbered sides are insulated.
//
// Node j sits on side 2j; the matrix is circulant, so only the generator row
// Lambda_d = Lambda_{j, j-d} (indices mod n) is stored.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace polydtn {

/// (cot[pi (j-k+1/2)/n] - cot[pi (j-k-1/2)/n]) / n. Throws InvalidInput for n < 2.
double lambda_entry(int n, long long j, long long k);

class ResponseMatrix {
 public:
  explicit ResponseMatrix(int n);

  int n() const { return n_; }
  const std::vector<double>& generator() const { return generator_; }
  double operator()(long long j, long long k) const;
  Eigen::MatrixXd dense() const;

 private:
  int n_;
  std::vector<double> generator_;
};

ResponseMatrix response_matrix(int n);

/// Eigen-decomposition Lambda W = W D with W_{j,k} = exp(2 pi i j k / n) and
/// D_{k,k} = 2 sin(pi k / n), for j, k = 1..n (stored 0-based).
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(int n);

  int n() const { return n_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  std::complex<double> eigenvector_entry(int j, int k) const;

  /// W D W^* / n, real part. `max_imag` (optional) receives the largest
  /// imaginary residue.
  Eigen::MatrixXd reconstruct(double* max_imag = nullptr) const;

 private:
  int n_;
  std::vector<double> eigenvalues_;
  // Columns of W split into real/imaginary parts, row-major by j.
  std::vector<double> cos_;
  std::vector<double> sin_;
};

SpectralDecomposition spectral_decomposition(int n);

struct CotSumCheck {
  std::complex<double> lhs;  // direct sum of zeta^{(2m +- 1) l}, l = 1..n
  std::complex<double> rhs;  // -1 + i cot[pi (m +- 1/2) / n]
  double abs_error() const { return std::abs(lhs - rhs); }
};

/// `sign` must be +1 or -1.
CotSumCheck cot_sum_identity_check(int n, long long m, int sign);

/// -sum_{j<k} Lambda_{j,k}, which equals cot(pi / (2n)).
double negative_offdiagonal_sum(const ResponseMatrix& lambda);

}  // namespace polydtn
