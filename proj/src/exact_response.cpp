#include "polydtn/exact_response.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "polydtn/error.hpp"
#include "polydtn/simd/kernels.hpp"

namespace polydtn {
namespace {

void require_n(int n) {
  if (n < 2) throw InvalidInput("polygon needs n >= 2 nodes, got " + std::to_string(n));
}

long long reduce_mod(long long d, int n) {
  long long r = d % n;
  return r < 0 ? r + n : r;
}

double cot(double x) { return std::cos(x) / std::sin(x); }

// Generator entry for a reduced offset d in [0, n). Folding d > n/2 onto
// n - d keeps the angles inside (-pi/2, pi/2]. The cot difference is
// rewritten as -sin(pi/n) / (sin(plus) sin(minus)), evaluated in long double,
// to avoid cancellation.
double generator_entry(int n, long long d) {
  assert(d >= 0 && d < n);
  if (2 * d > n) d = n - d;
  const long double a = std::numbers::pi_v<long double> / n;
  const long double plus = a * (static_cast<long double>(d) + 0.5L);
  const long double minus = a * (static_cast<long double>(d) - 0.5L);
  // (d +- 1/2)/n is never an integer.
  const long double sp = std::sin(plus), sm = std::sin(minus);
  assert(sp != 0.0L && sm != 0.0L);
  return static_cast<double>(-std::sin(a) / (n * sp * sm));
}

}  // namespace

double lambda_entry(int n, long long j, long long k) {
  require_n(n);
  return generator_entry(n, reduce_mod(j - k, n));
}

ResponseMatrix::ResponseMatrix(int n) : n_(n) {
  require_n(n);
  generator_.resize(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) generator_[d] = generator_entry(n, d);
}

double ResponseMatrix::operator()(long long j, long long k) const {
  return generator_[static_cast<std::size_t>(reduce_mod(j - k, n_))];
}

Eigen::MatrixXd ResponseMatrix::dense() const {
  Eigen::MatrixXd m(n_, n_);
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k) m(j, k) = (*this)(j, k);
  return m;
}

ResponseMatrix response_matrix(int n) { return ResponseMatrix(n); }

SpectralDecomposition::SpectralDecomposition(int n) : n_(n) {
  require_n(n);
  const auto nn = static_cast<std::size_t>(n);
  eigenvalues_.resize(nn);
  cos_.resize(nn * nn);
  sin_.resize(nn * nn);
  for (int k = 1; k <= n; ++k) {
    eigenvalues_[k - 1] = k == n ? 0.0 : 2.0 * std::sin(std::numbers::pi * k / n);
  }
  // W_{j,k} = omega^{jk}; reduce jk mod n before taking the angle.
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const long long e = (static_cast<long long>(j) * k) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / n;
      cos_[(j - 1) * nn + (k - 1)] = std::cos(angle);
      sin_[(j - 1) * nn + (k - 1)] = std::sin(angle);
    }
  }
}

std::complex<double> SpectralDecomposition::eigenvector_entry(int j, int k) const {
  const auto nn = static_cast<std::size_t>(n_);
  return {cos_[(j - 1) * nn + (k - 1)], sin_[(j - 1) * nn + (k - 1)]};
}

Eigen::MatrixXd SpectralDecomposition::reconstruct(double* max_imag) const {
  const auto nn = static_cast<std::size_t>(n_);
  // (W D)_{j,l} split into real and imaginary rows.
  std::vector<double> wd_re(nn * nn), wd_im(nn * nn);
  for (std::size_t j = 0; j < nn; ++j) {
    const std::span<const double> lam(eigenvalues_);
    simd::hadamard(std::span<const double>(cos_).subspan(j * nn, nn), lam,
                   std::span<double>(wd_re).subspan(j * nn, nn));
    simd::hadamard(std::span<const double>(sin_).subspan(j * nn, nn), lam,
                   std::span<double>(wd_im).subspan(j * nn, nn));
  }
  Eigen::MatrixXd out(n_, n_);
  double worst_imag = 0.0;
  const double inv_n = 1.0 / n_;
  for (std::size_t j = 0; j < nn; ++j) {
    const auto re_j = std::span<const double>(wd_re).subspan(j * nn, nn);
    const auto im_j = std::span<const double>(wd_im).subspan(j * nn, nn);
    for (std::size_t k = 0; k < nn; ++k) {
      const auto c_k = std::span<const double>(cos_).subspan(k * nn, nn);
      const auto s_k = std::span<const double>(sin_).subspan(k * nn, nn);
      // sum_l (WD)_{j,l} * conj(W_{k,l})
      const double re = simd::dot(re_j, c_k) + simd::dot(im_j, s_k);
      const double im = simd::dot(im_j, c_k) - simd::dot(re_j, s_k);
      out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = re * inv_n;
      worst_imag = std::max(worst_imag, std::abs(im * inv_n));
    }
  }
  if (max_imag) *max_imag = worst_imag;
  return out;
}

SpectralDecomposition spectral_decomposition(int n) { return SpectralDecomposition(n); }

CotSumCheck cot_sum_identity_check(int n, long long m, int sign) {
  require_n(n);
  if (sign != 1 && sign != -1) throw InvalidInput("sign must be +1 or -1");
  const long long two_n = 2LL * n;
  const long long base = 2 * m + sign;
  std::complex<double> sum{0.0, 0.0};
  for (long long l = 1; l <= n; ++l) {
    long long e = (base % two_n) * l % two_n;
    if (e < 0) e += two_n;
    const double angle = std::numbers::pi * static_cast<double>(e) / n;
    sum += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  // Reduce m + sign/2 modulo n before the cot: cot has period pi.
  const double half = (static_cast<double>(reduce_mod(m, n)) + 0.5 * sign) / n;
  return {sum, {-1.0, cot(std::numbers::pi * half)}};
}

double negative_offdiagonal_sum(const ResponseMatrix& lambda) {
  const int n = lambda.n();
  double s = 0.0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) s -= lambda(j, k);
  return s;
}

}  // namespace polydtn
