#include <cmath>

#include "glasso/kernels.hpp"
#include "glasso/solver.hpp"

namespace glasso {

void block_soft_threshold_inplace(std::span<double> v, double lambda) {
  const double norm = kernels::norm2(v);
  if (norm <= lambda) {
    for (double& e : v) e = 0.0;
    return;
  }
  const double scale = 1.0 - lambda / norm;
  for (double& e : v) e *= scale;
}

Vector block_soft_threshold(const Vector& v, double lambda) {
  Vector out = v;
  block_soft_threshold_inplace(std::span<double>(out.data(), out.size()), lambda);
  return out;
}

}  // namespace glasso
