#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "polydtn/simd/kernels.hpp"

using namespace polydtn::simd;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct Csr {
  std::vector<std::int64_t> row_ptr{0};
  std::vector<std::int32_t> col;
  std::vector<double> val;
  CsrView view(std::size_t rows) const { return {rows, row_ptr.data(), col.data(), val.data()}; }
};

Csr random_csr(std::size_t rows, std::mt19937_64& rng) {
  Csr m;
  std::uniform_int_distribution<int> count(0, 11);
  std::uniform_int_distribution<std::int32_t> column(0, static_cast<std::int32_t>(rows) - 1);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      m.col.push_back(column(rng));
      m.val.push_back(u(rng));
    }
    m.row_ptr.push_back(static_cast<std::int64_t>(m.col.size()));
  }
  return m;
}

}  // namespace

TEST_CASE("every compiled kernel table agrees with the scalar reference") {
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(7);
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    const KernelTable* t = table_for(isa);
    if (!t) continue;
    CAPTURE(std::string(isa_name(isa)));
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101, 1000}) {
      CAPTURE(n);
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);
      double scale = 0.0;
      for (std::size_t i = 0; i < n; ++i) scale += std::abs(a[i] * b[i]);
      CHECK(std::abs(t->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= 1e-14 * (scale + 1.0));

      auto y1 = b, y2 = b;
      t->axpy(0.37, a.data(), y1.data(), n);
      ref.axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

      y1 = b;
      y2 = b;
      t->xpay(a.data(), -1.25, y1.data(), n);
      ref.xpay(a.data(), -1.25, y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-15));

      std::vector<double> h1(n), h2(n);
      t->hadamard(a.data(), b.data(), h1.data(), n);
      ref.hadamard(a.data(), b.data(), h2.data(), n);
      CHECK(h1 == h2);  // one rounding each, no reassociation
    }
    for (std::size_t rows : {1, 2, 5, 33, 200}) {
      const Csr m = random_csr(rows, rng);
      const auto x = random_vector(rows, rng);
      std::vector<double> y1(rows), y2(rows);
      t->spmv(m.view(rows), x.data(), y1.data());
      ref.spmv(m.view(rows), x.data(), y2.data());
      for (std::size_t i = 0; i < rows; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-13);
    }
  }
}

TEST_CASE("scalar kernels against hand-computed values") {
  const KernelTable& k = scalar_table();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(k.dot(a, b, 3) == 12.0);
  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[2] == 7.0);
  k.xpay(a, 0.5, y, 3);  // y = a + y/2
  CHECK(y[0] == 2.5);
  const std::int64_t rp[] = {0, 2, 3};
  const std::int32_t col[] = {0, 1, 1};
  const double val[] = {2.0, -1.0, 3.0};
  const double x[] = {1.0, 2.0};
  double out[2];
  k.spmv({2, rp, col, val}, x, out);
  CHECK(out[0] == 0.0);
  CHECK(out[1] == 6.0);
}

TEST_CASE("active table is available and named") {
  const KernelTable& t = active();
  CHECK(table_for(t.isa) != nullptr);
  CHECK(!isa_name(t.isa).empty());
}
