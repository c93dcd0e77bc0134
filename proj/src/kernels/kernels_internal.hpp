#pragma once

#include <cstddef>

#include "glasso/kernels.hpp"

namespace glasso::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n);
}  // namespace scalar

#if defined(GLASSO_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void gemv(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemv_t(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
void gemm(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
          std::size_t n);
}  // namespace avx2
#endif

}  // namespace glasso::kernels
