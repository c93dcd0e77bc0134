#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "glasso/dictionary.hpp"
#include "glasso/error.hpp"
#include "glasso/kernels.hpp"

namespace glasso {

Matrix dct_matrix(Index n) {
  require(n >= 1, ErrorCode::invalid_argument, "DCT size must be positive");
  Matrix c(n, n);
  const double nd = static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < n; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / nd) : std::sqrt(2.0 / nd);
      c(i, k) = scale * std::cos(std::numbers::pi * (2.0 * i + 1.0) * k / (2.0 * nd));
    }
  }
  return c;
}

std::string describe(const StructureNode& node) {
  switch (node.kind) {
    case StructureKind::dense:
      return "dense(" + std::to_string(node.rows) + "," + std::to_string(node.cols) + ")";
    case StructureKind::dct2d:
      return "dct2d(" + std::to_string(node.image_rows) + "," + std::to_string(node.image_cols) +
             ")";
    case StructureKind::dirac:
      if (node.image_rows * node.image_cols == node.rows && node.image_rows != 0) {
        return "dirac(" + std::to_string(node.image_rows) + "," + std::to_string(node.image_cols) +
               ")";
      }
      return "dirac(" + std::to_string(node.rows) + ")";
    case StructureKind::kronecker_time:
      return "kronecker_time(" + std::to_string(node.frames) + "," + describe(*node.inner) + ")";
    case StructureKind::concat:
      return "concat(" + describe(*node.left) + "," + describe(*node.right) + ")";
  }
  return "dense";
}

void apply_structure(const StructureNode& node, std::span<const double> x, std::span<double> y) {
  require(x.size() == node.cols && y.size() == node.rows, ErrorCode::dimension_mismatch,
          "apply: operand shapes do not match dictionary " + describe(node));
  switch (node.kind) {
    case StructureKind::dense:
      kernels::gemv(node.matrix->data(), node.rows, node.cols, x, y);
      return;
    case StructureKind::dirac:
      std::copy(x.begin(), x.end(), y.begin());
      return;
    case StructureKind::dct2d: {
      // image = C_r K C_c^T with K the coefficient grid.
      const Index r = node.image_rows, c = node.image_cols;
      std::vector<double> tmp(r * c);
      kernels::gemm(node.dct_rows->data(), x.data(), tmp.data(), r, r, c);
      kernels::gemm(tmp.data(), node.dct_cols_t->data(), y.data(), r, c, c);
      return;
    }
    case StructureKind::kronecker_time: {
      const Index ir = node.inner->rows, ic = node.inner->cols;
      for (Index t = 0; t < node.frames; ++t) {
        apply_structure(*node.inner, x.subspan(t * ic, ic), y.subspan(t * ir, ir));
      }
      return;
    }
    case StructureKind::concat: {
      const Index lc = node.left->cols;
      apply_structure(*node.left, x.first(lc), y);
      std::vector<double> tmp(node.rows);
      apply_structure(*node.right, x.subspan(lc), tmp);
      for (Index i = 0; i < node.rows; ++i) y[i] += tmp[i];
      return;
    }
  }
}

void apply_structure_transpose(const StructureNode& node, std::span<const double> y,
                               std::span<double> x) {
  require(y.size() == node.rows && x.size() == node.cols, ErrorCode::dimension_mismatch,
          "apply_transpose: operand shapes do not match dictionary " + describe(node));
  switch (node.kind) {
    case StructureKind::dense:
      kernels::gemv_t(node.matrix->data(), node.rows, node.cols, y, x);
      return;
    case StructureKind::dirac:
      std::copy(y.begin(), y.end(), x.begin());
      return;
    case StructureKind::dct2d: {
      // K = C_r^T image C_c
      const Index r = node.image_rows, c = node.image_cols;
      std::vector<double> tmp(r * c);
      kernels::gemm(node.dct_rows_t->data(), y.data(), tmp.data(), r, r, c);
      kernels::gemm(tmp.data(), node.dct_cols->data(), x.data(), r, c, c);
      return;
    }
    case StructureKind::kronecker_time: {
      const Index ir = node.inner->rows, ic = node.inner->cols;
      for (Index t = 0; t < node.frames; ++t) {
        apply_structure_transpose(*node.inner, y.subspan(t * ir, ir), x.subspan(t * ic, ic));
      }
      return;
    }
    case StructureKind::concat: {
      const Index lc = node.left->cols;
      apply_structure_transpose(*node.left, y, x.first(lc));
      apply_structure_transpose(*node.right, y, x.subspan(lc));
      return;
    }
  }
}

Matrix materialize(const StructureNode& node) {
  switch (node.kind) {
    case StructureKind::dense:
      return *node.matrix;
    case StructureKind::dirac:
      return Matrix::Identity(node.rows, node.cols);
    case StructureKind::dct2d: {
      const Index r = node.image_rows, c = node.image_cols;
      const Matrix& cr = *node.dct_rows;
      const Matrix& cc = *node.dct_cols;
      Matrix out(r * c, r * c);
      for (Index i1 = 0; i1 < r; ++i1)
        for (Index i2 = 0; i2 < c; ++i2)
          for (Index k1 = 0; k1 < r; ++k1)
            for (Index k2 = 0; k2 < c; ++k2) out(i1 * c + i2, k1 * c + k2) = cr(i1, k1) * cc(i2, k2);
      return out;
    }
    case StructureKind::kronecker_time: {
      const Matrix inner = materialize(*node.inner);
      Matrix out = Matrix::Zero(node.rows, node.cols);
      for (Index t = 0; t < node.frames; ++t) {
        out.block(t * inner.rows(), t * inner.cols(), inner.rows(), inner.cols()) = inner;
      }
      return out;
    }
    case StructureKind::concat: {
      Matrix out(node.rows, node.cols);
      out.leftCols(node.left->cols) = materialize(*node.left);
      out.rightCols(node.right->cols) = materialize(*node.right);
      return out;
    }
  }
  return {};
}

}  // namespace glasso
