#include "bev/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace bev::simd {

namespace {

Isa g_isa = Isa::Scalar;
bool g_resolved = false;

Isa resolve_from_env() {
  const char* env = std::getenv("BEV_SIMD");
  std::string want = env ? env : "auto";
  if (want == "scalar") return Isa::Scalar;
  if (want == "avx2") {
    if (!avx2_supported())
      throw std::runtime_error("BEV_SIMD=avx2 requested but CPU lacks AVX2/FMA");
    return Isa::Avx2;
  }
  return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
}

void ensure_resolved() {
  if (!g_resolved) {
    g_isa = resolve_from_env();
    g_resolved = true;
  }
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Kernels& active() {
  ensure_resolved();
#if defined(__x86_64__) || defined(_M_X64)
  if (g_isa == Isa::Avx2) return kAvx2Kernels;
#endif
  return kScalarKernels;
}

Isa active_isa() {
  ensure_resolved();
  return g_isa;
}

std::string isa_name(Isa isa) {
  return isa == Isa::Avx2 ? "avx2" : "scalar";
}

void force(Isa isa) {
  if (isa == Isa::Avx2 && !avx2_supported())
    throw std::runtime_error("AVX2/FMA kernels unavailable on this CPU");
  g_isa = isa;
  g_resolved = true;
}

void gemm_acc(const double* a, std::size_t lda, const double* b,
              std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
              std::size_t k, std::size_t n) {
  const Kernels& K = active();
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * lda;
    double* crow = c + i * ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av != 0.0) K.axpy(av, b + p * ldb, crow, n);
    }
  }
}

void gemm_ta_acc(const double* a, std::size_t lda, const double* b,
                 std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
                 std::size_t k, std::size_t n) {
  const Kernels& K = active();
  // C[i, :] += sum_p A[p, i] * B[p, :]
  for (std::size_t p = 0; p < k; ++p) {
    const double* arow = a + p * lda;
    const double* brow = b + p * ldb;
    for (std::size_t i = 0; i < m; ++i) {
      const double av = arow[i];
      if (av != 0.0) K.axpy(av, brow, c + i * ldc, n);
    }
  }
}

void gemm_nt_acc(const double* a, std::size_t lda, const double* b,
                 std::size_t ldb, double* c, std::size_t ldc, std::size_t m,
                 std::size_t k, std::size_t n) {
  const Kernels& K = active();
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * lda;
    double* crow = c + i * ldc;
    for (std::size_t j = 0; j < n; ++j) crow[j] += K.dot(arow, b + j * ldb, k);
  }
}

}  // namespace bev::simd
