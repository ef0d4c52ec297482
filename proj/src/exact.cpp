#include "polydtn/exact.hpp"

#include <cmath>
#include <utility>

#include <boost/integer/common_factor.hpp>

#include "polydtn/error.hpp"

namespace polydtn::exact {

Rational from_double(double x) {
  if (!std::isfinite(x)) throw InvalidInput("cannot convert a non-finite value to a rational");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double frac = std::frexp(x, &exp);  // x = frac * 2^exp, 0.5 <= |frac| < 1
  const auto mant = static_cast<long long>(std::ldexp(frac, 53));
  exp -= 53;
  Rational q(mant);
  if (exp > 0) {
    q *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    q /= Rational(BigInt(1) << -exp);
  }
  return q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

BigInt bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  if (n == 0) return BigInt(1);
  BigInt prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return BigInt(0);
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        // Exact division: Sylvester's identity.
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  // Scale each row by the lcm of its denominators.
  IntMatrix scaled(n, n);
  Rational factor(1);
  for (std::size_t r = 0; r < n; ++r) {
    BigInt l(1);
    for (std::size_t c = 0; c < n; ++c) {
      l = boost::integer::lcm(l, BigInt(boost::multiprecision::denominator(m(r, c))));
    }
    for (std::size_t c = 0; c < n; ++c) {
      const Rational v = m(r, c) * Rational(l);
      scaled(r, c) = boost::multiprecision::numerator(v);
    }
    factor *= Rational(l);
  }
  return Rational(bareiss_determinant(std::move(scaled))) / factor;
}

RationalMatrix solve(RationalMatrix a, RationalMatrix b) {
  const std::size_t n = a.rows();
  if (n != a.cols() || b.rows() != n) throw InvalidInput("solve: dimension mismatch");
  const std::size_t m = b.cols();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw NumericalFailure("exact solve: singular matrix at column " + std::to_string(k));
    if (p != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      for (std::size_t c = 0; c < m; ++c) std::swap(b(k, c), b(p, c));
    }
    const Rational pivot = a(k, k);
    for (std::size_t c = k; c < n; ++c) a(k, c) /= pivot;
    for (std::size_t c = 0; c < m; ++c) b(k, c) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rational f = a(i, k);
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t c = 0; c < m; ++c) b(i, c) -= f * b(k, c);
    }
  }
  return b;
}

}  // namespace polydtn::exact
