#include <cmath>
#include <string>

#include "glasso/dictionary.hpp"
#include "glasso/error.hpp"

namespace glasso {

BlockDictionary::BlockDictionary(StructurePtr structure, GroupPartition partition)
    : structure_(std::move(structure)),
      partition_(std::move(partition)),
      cache_(std::make_shared<DenseCache>()) {
  require(structure_ != nullptr, ErrorCode::invalid_argument, "null dictionary structure");
  require(partition_.num_columns() == structure_->cols, ErrorCode::dimension_mismatch,
          "partition covers " + std::to_string(partition_.num_columns()) +
              " columns but the matrix has " + std::to_string(structure_->cols));
}

BlockDictionary BlockDictionary::from_dense_unchecked(Matrix matrix, GroupPartition partition) {
  auto node = std::make_shared<StructureNode>();
  node->kind = StructureKind::dense;
  node->rows = static_cast<Index>(matrix.rows());
  node->cols = static_cast<Index>(matrix.cols());
  node->matrix = std::make_shared<const Matrix>(std::move(matrix));
  return BlockDictionary(std::move(node), std::move(partition));
}

BlockDictionary BlockDictionary::from_dense(Matrix matrix, GroupPartition partition) {
  for (Index j = 0; j < static_cast<Index>(matrix.cols()); ++j) {
    const double norm = matrix.col(j).norm();
    require(std::abs(norm - 1.0) <= 1e-10, ErrorCode::non_unit_column,
            "column " + std::to_string(j) + " has norm " + std::to_string(norm));
  }
  return from_dense_unchecked(std::move(matrix), std::move(partition));
}

const Matrix& BlockDictionary::dense() const {
  if (structure_->kind == StructureKind::dense) return *structure_->matrix;
  std::call_once(cache_->once, [this] { cache_->matrix = materialize(*structure_); });
  return cache_->matrix;
}

void BlockDictionary::apply(std::span<const double> x, std::span<double> y) const {
  apply_structure(*structure_, x, y);
}

void BlockDictionary::apply_transpose(std::span<const double> y, std::span<double> x) const {
  apply_structure_transpose(*structure_, y, x);
}

Vector BlockDictionary::apply(const Vector& x) const {
  Vector y(rows());
  apply(std::span<const double>(x.data(), x.size()), std::span<double>(y.data(), y.size()));
  return y;
}

Vector BlockDictionary::apply_transpose(const Vector& y) const {
  Vector x(cols());
  apply_transpose(std::span<const double>(y.data(), y.size()),
                  std::span<double>(x.data(), x.size()));
  return x;
}

Matrix BlockDictionary::columns(std::span<const Index> idx) const {
  const Matrix& m = dense();
  Matrix out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (Index k = 0; k < idx.size(); ++k) {
    require(idx[k] < cols(), ErrorCode::invalid_argument, "column index out of range");
    out.col(k) = m.col(idx[k]);
  }
  return out;
}

BlockDictionary BlockDictionary::with_partition(GroupPartition partition) const {
  BlockDictionary out(structure_, std::move(partition));
  out.cache_ = cache_;
  return out;
}

}  // namespace glasso
