#include <cmath>
#include <string>

#include "glasso/dictionary.hpp"
#include "glasso/error.hpp"

namespace glasso {
namespace {

Index exact_sqrt(Index v) {
  auto r = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

std::vector<IndexList> tile_groups(Index image_rows, Index image_cols, Index D) {
  require(D >= 1, ErrorCode::invalid_argument, "tile size D must be positive");
  const Index d = exact_sqrt(D);
  require(d * d == D, ErrorCode::invalid_argument,
          "tile size D = " + std::to_string(D) + " is not a perfect square");
  const Index n = image_rows * image_cols;
  require(n % D == 0, ErrorCode::invalid_argument,
          "D = " + std::to_string(D) + " does not divide N = " + std::to_string(n));
  require(image_rows % d == 0 && image_cols % d == 0, ErrorCode::invalid_argument,
          "tile side " + std::to_string(d) + " does not divide the image shape " +
              std::to_string(image_rows) + "x" + std::to_string(image_cols));
  std::vector<IndexList> tiles;
  for (Index bi = 0; bi < image_rows / d; ++bi) {
    for (Index bj = 0; bj < image_cols / d; ++bj) {
      IndexList tile;
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) tile.push_back((bi * d + a) * image_cols + bj * d + b);
      tiles.push_back(std::move(tile));
    }
  }
  return tiles;
}

}  // namespace

BlockDictionary dirac_basis(Index n) {
  require(n >= 1, ErrorCode::invalid_argument, "dirac size must be positive");
  auto node = std::make_shared<StructureNode>();
  node->kind = StructureKind::dirac;
  node->rows = node->cols = n;
  const Index side = exact_sqrt(n);
  if (side * side == n) node->image_rows = node->image_cols = side;
  return BlockDictionary(std::move(node), GroupPartition::singletons(n));
}

BlockDictionary dct2d_basis(Index image_rows, Index image_cols) {
  require(image_rows >= 1 && image_cols >= 1, ErrorCode::invalid_argument,
          "dct2d image shape must be positive");
  auto node = std::make_shared<StructureNode>();
  node->kind = StructureKind::dct2d;
  node->image_rows = image_rows;
  node->image_cols = image_cols;
  node->rows = node->cols = image_rows * image_cols;
  Matrix cr = dct_matrix(image_rows);
  Matrix cc = dct_matrix(image_cols);
  node->dct_rows_t = std::make_shared<const Matrix>(cr.transpose());
  node->dct_cols_t = std::make_shared<const Matrix>(cc.transpose());
  node->dct_rows = std::make_shared<const Matrix>(std::move(cr));
  node->dct_cols = std::make_shared<const Matrix>(std::move(cc));
  return BlockDictionary(std::move(node), GroupPartition::singletons(image_rows * image_cols));
}

BlockDictionary dct2d_basis(Index side) { return dct2d_basis(side, side); }

BlockDictionary build_basis(const BasisKind& kind) {
  return std::visit(
      [](const auto& k) -> BlockDictionary {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Dct2dBasis>) {
          return dct2d_basis(k.side);
        } else {
          return dirac_basis(k.size);
        }
      },
      kind);
}

BlockDictionary time_extend(const BlockDictionary& x, Index frames, const TimeGrouping& grouping) {
  require(frames >= 1, ErrorCode::invalid_argument, "frame count T must be positive");
  const Index p = x.cols();
  auto node = std::make_shared<StructureNode>();
  node->kind = StructureKind::kronecker_time;
  node->frames = frames;
  node->rows = x.rows() * frames;
  node->cols = p * frames;
  node->inner = x.structure_ptr();

  std::vector<IndexList> spatial;
  if (std::holds_alternative<TemporalGroups>(grouping)) {
    spatial = x.partition().groups();
  } else {
    const auto& st = std::get<SpatioTemporalGroups>(grouping);
    Index ir = st.image_rows, ic = st.image_cols;
    if (ir == 0 || ic == 0) {
      ir = x.structure().image_rows;
      ic = x.structure().image_cols;
    }
    if (ir == 0 || ic == 0) {
      ir = ic = exact_sqrt(p);
      require(ir * ic == p, ErrorCode::invalid_argument,
              "cannot infer a square image from " + std::to_string(p) + " columns");
    }
    require(ir * ic == p, ErrorCode::dimension_mismatch,
            "image shape does not match the column count");
    spatial = tile_groups(ir, ic, st.D);
  }

  std::vector<IndexList> groups;
  groups.reserve(spatial.size());
  for (const auto& set : spatial) {
    IndexList g;
    g.reserve(set.size() * frames);
    for (Index t = 0; t < frames; ++t)
      for (Index j : set) g.push_back(t * p + j);
    groups.push_back(std::move(g));
  }
  return BlockDictionary(std::move(node), GroupPartition::from_sets(std::move(groups), p * frames));
}

BlockDictionary concat_blocks(const BlockDictionary& a, const BlockDictionary& b) {
  require(a.rows() == b.rows(), ErrorCode::dimension_mismatch,
          "row counts differ: " + std::to_string(a.rows()) + " vs " + std::to_string(b.rows()));
  auto node = std::make_shared<StructureNode>();
  node->kind = StructureKind::concat;
  node->rows = a.rows();
  node->cols = a.cols() + b.cols();
  node->left = a.structure_ptr();
  node->right = b.structure_ptr();

  std::vector<IndexList> groups = a.partition().groups();
  for (const auto& set : b.partition().groups()) {
    IndexList g(set);
    for (Index& j : g) j += a.cols();
    groups.push_back(std::move(g));
  }
  const Index total = node->cols;
  return BlockDictionary(std::move(node), GroupPartition::from_sets(std::move(groups), total));
}

BlockDictionary demix_dictionary(Index image_rows, Index image_cols, Index frames, Index D) {
  const BlockDictionary smooth = time_extend(dct2d_basis(image_rows, image_cols), frames,
                                             TemporalGroups{});
  const BlockDictionary local = time_extend(dirac_basis(image_rows * image_cols), frames,
                                            SpatioTemporalGroups{D, image_rows, image_cols});
  return concat_blocks(smooth, local);
}

}  // namespace glasso
