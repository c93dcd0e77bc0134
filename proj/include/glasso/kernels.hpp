#pragma once

// Dense arithmetic kernels behind every solver inner loop.
//
// Each kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is chosen once per process from the CPU
// feature bits; GLASSO_SIMD=scalar|avx2 in the environment overrides the
// choice. Within one variant the summation order is fixed, so results are
// bitwise reproducible run to run and independent of thread count.

#include <cstddef>
#include <span>
#include <string_view>

namespace glasso::kernels {

struct KernelTable {
  std::string_view name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sumsq)(const double* a, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // y = A x, A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y = A^T x, A row-major rows x cols
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // C = A B, all row-major; A is m x k, B is k x n
  void (*gemm)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
               std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the build or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table();
/// The table selected for this process.
const KernelTable& active();

double dot(std::span<const double> a, std::span<const double> b);
double sumsq(std::span<const double> a);
double norm2(std::span<const double> a);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void gemv(const double* a, std::size_t rows, std::size_t cols, std::span<const double> x,
          std::span<double> y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, std::span<const double> x,
            std::span<double> y);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n);

}  // namespace glasso::kernels
