// CPU detection and table selection. Compiled without extended ISA flags.

#include <cassert>
#include <cstdlib>
#include <string>

#include "polydtn/simd/kernels.hpp"

namespace polydtn::simd {

#if defined(POLYDTN_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(POLYDTN_HAVE_NEON)
const KernelTable& neon_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(POLYDTN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select() {
  const char* env = std::getenv("POLYDTN_SIMD");
  const std::string wanted = env ? env : "";
  if (wanted == "scalar") return scalar_table();
  if (wanted == "avx2" || wanted.empty()) {
    if (const KernelTable* t = table_for(Isa::Avx2)) return *t;
  }
  if (wanted == "neon" || wanted.empty()) {
    if (const KernelTable* t = table_for(Isa::Neon)) return *t;
  }
  return scalar_table();
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &scalar_table();
    case Isa::Avx2:
#if defined(POLYDTN_HAVE_AVX2)
      if (cpu_has_avx2()) return &avx2_table();
#endif
      return nullptr;
    case Isa::Neon:
#if defined(POLYDTN_HAVE_NEON)
      return &neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void xpay(std::span<const double> x, double beta, std::span<double> y) {
  assert(x.size() == y.size());
  active().xpay(x.data(), beta, y.data(), x.size());
}

void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  assert(a.size() == b.size() && a.size() == out.size());
  active().hadamard(a.data(), b.data(), out.data(), a.size());
}

void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  assert(y.size() == a.rows);
  (void)x;
  active().spmv(a, x.data(), y.data());
}

}  // namespace polydtn::simd
