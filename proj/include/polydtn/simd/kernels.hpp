#pragma once

// Data-parallel double-precision kernels used by the spectral reconstruction
// and the conjugate-gradient interior solver.
//
// Every kernel has a scalar reference implementation. AVX2/FMA (x86-64) and
// NEON (aarch64) variants are compiled when the toolchain targets them and are
// selected at runtime from CPU feature detection. The environment variable
// POLYDTN_SIMD=scalar|avx2|neon overrides the choice (falling back to scalar
// when the requested set is unavailable).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace polydtn::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Compressed sparse row view over caller-owned storage.
struct CsrView {
  std::size_t rows = 0;
  const std::int64_t* row_ptr = nullptr;  // rows + 1 entries
  const std::int32_t* col = nullptr;
  const double* val = nullptr;
};

struct KernelTable {
  Isa isa;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = x + beta * y
  void (*xpay)(const double* x, double beta, double* y, std::size_t n);
  // out = a .* b
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t n);
  // y = A x
  void (*spmv)(const CsrView& a, const double* x, double* y);
};

const KernelTable& scalar_table();

/// Table for the requested instruction set, or nullptr when it was not
/// compiled in or the running CPU lacks the features.
const KernelTable* table_for(Isa isa);

/// Runtime-selected table (cached after the first call).
const KernelTable& active();

// Span front ends over the active table.
double dot(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void xpay(std::span<const double> x, double beta, std::span<double> y);
void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out);
void spmv(const CsrView& a, std::span<const double> x, std::span<double> y);

}  // namespace polydtn::simd
