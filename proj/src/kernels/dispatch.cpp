#include <cmath>
#include <cstdlib>
#include <string_view>

#include "glasso/error.hpp"
#include "kernels_internal.hpp"

namespace glasso::kernels {
namespace {

const KernelTable kScalar{"scalar",      scalar::dot,    scalar::sumsq, scalar::axpy,
                          scalar::gemv, scalar::gemv_t, scalar::gemm};

#if defined(GLASSO_HAVE_AVX2)
const KernelTable kAvx2{"avx2",      avx2::dot,    avx2::sumsq, avx2::axpy,
                        avx2::gemv, avx2::gemv_t, avx2::gemm};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}
#endif

const KernelTable& select() {
  const char* env = std::getenv("GLASSO_SIMD");
  const std::string_view want = env ? std::string_view(env) : std::string_view();
  if (want == "scalar") return kScalar;
  if (const KernelTable* t = avx2_table()) return *t;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(GLASSO_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require(a.size() == b.size(), ErrorCode::dimension_mismatch, "dot operand lengths differ");
  return active().dot(a.data(), b.data(), a.size());
}

double sumsq(std::span<const double> a) { return active().sumsq(a.data(), a.size()); }

double norm2(std::span<const double> a) { return std::sqrt(sumsq(a)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  require(x.size() == y.size(), ErrorCode::dimension_mismatch, "axpy operand lengths differ");
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void gemv(const double* a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y) {
  require(x.size() == cols && y.size() == rows, ErrorCode::dimension_mismatch,
          "gemv operand shapes");
  active().gemv(a, rows, cols, x.data(), y.data());
}

void gemv_t(const double* a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y) {
  require(x.size() == rows && y.size() == cols, ErrorCode::dimension_mismatch,
          "gemv_t operand shapes");
  active().gemv_t(a, rows, cols, x.data(), y.data());
}

void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n) {
  active().gemm(a, b, c, m, k, n);
}

}  // namespace glasso::kernels
