#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <vector>

namespace glasso {

/// Dense row-major storage used for every dictionary.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = std::size_t;
using IndexList = std::vector<Index>;

}  // namespace glasso
