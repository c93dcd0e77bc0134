#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <variant>

#include "glasso/partition.hpp"
#include "glasso/types.hpp"

namespace glasso {

enum class StructureKind { dense, dct2d, dirac, kronecker_time, concat };

struct StructureNode;
using StructurePtr = std::shared_ptr<const StructureNode>;

/// Provenance of a dictionary plus the data its fast apply paths need.
///
/// Leaves: dense (explicit matrix), dct2d (orthonormal 2-D DCT-II over an
/// image_rows x image_cols grid, stored as its two 1-D factors) and dirac
/// (identity). Inner nodes: kronecker_time (I_T (x) inner) and concat
/// ([left | right]).
struct StructureNode {
  StructureKind kind = StructureKind::dense;
  Index rows = 0;
  Index cols = 0;
  Index image_rows = 0;
  Index image_cols = 0;
  Index frames = 0;
  StructurePtr inner;
  StructurePtr left;
  StructurePtr right;
  std::shared_ptr<const Matrix> matrix;
  std::shared_ptr<const Matrix> dct_rows;
  std::shared_ptr<const Matrix> dct_cols;
  std::shared_ptr<const Matrix> dct_rows_t;
  std::shared_ptr<const Matrix> dct_cols_t;
};

void apply_structure(const StructureNode& node, std::span<const double> x, std::span<double> y);
void apply_structure_transpose(const StructureNode& node, std::span<const double> y,
                               std::span<double> x);
Matrix materialize(const StructureNode& node);

/// One-line descriptor, e.g. "concat(kronecker_time(4,dct2d(16,16)),kronecker_time(4,dirac(256)))".
std::string describe(const StructureNode& node);

/// Orthonormal 1-D DCT-II matrix of size n; column k is the k-th atom.
Matrix dct_matrix(Index n);

/// Dense n x p dictionary with a column partition.
///
/// Structured dictionaries materialize their dense matrix on first use of
/// dense(); apply() and apply_transpose() use the structure directly and
/// never need the dense form.
class BlockDictionary {
 public:
  BlockDictionary() = default;
  BlockDictionary(StructurePtr structure, GroupPartition partition);

  /// Wraps a user matrix. Every column must have unit norm within 1e-10.
  static BlockDictionary from_dense(Matrix matrix, GroupPartition partition);
  /// Same, without the unit-norm check (general solver inputs).
  static BlockDictionary from_dense_unchecked(Matrix matrix, GroupPartition partition);

  Index rows() const { return structure_->rows; }
  Index cols() const { return structure_->cols; }
  const GroupPartition& partition() const { return partition_; }
  const StructureNode& structure() const { return *structure_; }
  const StructurePtr& structure_ptr() const { return structure_; }
  std::string descriptor() const { return describe(*structure_); }

  const Matrix& dense() const;

  /// y = X x
  void apply(std::span<const double> x, std::span<double> y) const;
  /// x = X^T y
  void apply_transpose(std::span<const double> y, std::span<double> x) const;
  Vector apply(const Vector& x) const;
  Vector apply_transpose(const Vector& y) const;

  /// Dense n x |columns| submatrix.
  Matrix columns(std::span<const Index> columns) const;
  Matrix block(Index g) const { return columns(partition_.group(g)); }

  /// Same matrix with a different partition of its columns.
  BlockDictionary with_partition(GroupPartition partition) const;

 private:
  struct DenseCache {
    std::once_flag once;
    Matrix matrix;
  };

  StructurePtr structure_;
  GroupPartition partition_;
  std::shared_ptr<DenseCache> cache_;
};

struct Dct2dBasis {
  Index side = 0;
};
struct DiracBasis {
  Index size = 0;
};
using BasisKind = std::variant<Dct2dBasis, DiracBasis>;

/// Orthonormal basis with singleton groups.
BlockDictionary build_basis(const BasisKind& kind);
BlockDictionary dirac_basis(Index n);
BlockDictionary dct2d_basis(Index side);
BlockDictionary dct2d_basis(Index image_rows, Index image_cols);

struct TemporalGroups {};
/// D-pixel tiles (d x d, d = sqrt(D)) of the image the columns index,
/// extended across all frames. Image shape defaults to the basis image shape,
/// or a square image when the basis has none.
struct SpatioTemporalGroups {
  Index D = 0;
  Index image_rows = 0;
  Index image_cols = 0;
};
using TimeGrouping = std::variant<TemporalGroups, SpatioTemporalGroups>;

/// I_T (x) X with temporal (each group of X spans all frames) or
/// spatiotemporal (tile groups across frames) partition.
BlockDictionary time_extend(const BlockDictionary& x, Index frames, const TimeGrouping& grouping);

/// [A | B]; B's groups follow A's with indices shifted by A.cols().
BlockDictionary concat_blocks(const BlockDictionary& a, const BlockDictionary& b);

/// [I_T (x) DCT2D | I_T (x) I_N] with temporal groups on the first component
/// and D-tile spatiotemporal groups on the second.
BlockDictionary demix_dictionary(Index image_rows, Index image_cols, Index frames, Index D);

}  // namespace glasso
