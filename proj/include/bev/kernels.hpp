#pragma once

#include <cstddef>
#include <string>

namespace bev::simd {

// Flat double-precision kernels behind every arithmetic-heavy inner loop in
// the tensor library. Each entry has a scalar reference implementation and,
// where the CPU supports it, an AVX2+FMA variant. The active table is chosen
// once at startup; tests compare the variants element-for-element.
struct Kernels {
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = a * x
  void (*scale)(double a, const double* x, double* y, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y = a + b
  void (*add)(const double* a, const double* b, double* y, std::size_t n);
  // y = a - b
  void (*sub)(const double* a, const double* b, double* y, std::size_t n);
  // y = a * b elementwise
  void (*mul)(const double* a, const double* b, double* y, std::size_t n);
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);  // n >= 1
};

enum class Isa { Scalar, Avx2 };

extern const Kernels kScalarKernels;
#if defined(__x86_64__) || defined(_M_X64)
extern const Kernels kAvx2Kernels;  // call only when avx2_supported()
#endif

bool avx2_supported();

// Active table. First call resolves from the CPU, honoring the BEV_SIMD
// environment variable ("scalar", "avx2", "auto").
const Kernels& active();
Isa active_isa();
std::string isa_name(Isa isa);

// Override the selection (used by tests and the CLI --simd flag). Throws if
// the requested ISA is unavailable on this machine.
void force(Isa isa);

// Mid-level GEMM helpers composed from the kernel table. All matrices are
// row-major with an explicit leading dimension (row stride); rows themselves
// are contiguous.

// C[m x n] += A[m x k] * B[k x n]
void gemm_acc(const double* a, std::size_t lda, const double* b,
              std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
              std::size_t k, std::size_t n);

// C[m x n] += A^T * B where A is [k x m]
void gemm_ta_acc(const double* a, std::size_t lda, const double* b,
                 std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
                 std::size_t k, std::size_t n);

// C[m x n] += A * B^T where A is [m x k], B is [n x k]
void gemm_nt_acc(const double* a, std::size_t lda, const double* b,
                 std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
                 std::size_t k, std::size_t n);

}  // namespace bev::simd
