#pragma once

#include <cstdint>
#include <span>

#include "glasso/dictionary.hpp"

namespace glasso {

/// Coefficient vector with its partition and group-level support.
///
/// Invariant: groups listed in support have a nonzero block; every other
/// block is exactly zero.
struct GroupSparseSignal {
  Vector coefficients;
  GroupPartition partition;
  IndexList support;  ///< ascending group ids

  /// Support read off the coefficients (blocks with nonzero norm).
  static GroupSparseSignal from_coefficients(Vector coefficients, GroupPartition partition);
  static GroupSparseSignal zero(GroupPartition partition);

  double group_norm(Index g) const;
  std::vector<double> group_norms() const;
  /// Column indices covered by the support, ascending.
  IndexList support_columns() const { return partition.columns_of(support); }
  /// Total support dimension d*_G.
  Index support_dimension() const;
};

/// y = X beta* + w with everything needed to replay the draw.
struct SyntheticInstance {
  BlockDictionary dictionary;
  GroupSparseSignal truth;
  Vector noise;
  Vector observations;
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

/// Demixing scene parameters. N = side^2 pixels per frame, D = d^2 pixels per
/// anomaly tile.
struct SceneConfig {
  Index side = 16;
  Index T = 4;
  Index D = 4;
  Index s1 = 0;  ///< nonzero smooth (DCT) groups
  Index s2 = 0;  ///< nonzero anomaly (tile) groups
  double alpha = 1.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  /// Draw s1 + s2 groups uniformly over all G groups instead of s1 and s2
  /// per component; the realized split then varies.
  bool uniform_support = false;

  Index pixels() const { return side * side; }
  Index smooth_groups() const { return pixels(); }
  Index anomaly_groups() const { return D == 0 ? 0 : pixels() / D; }
  Index total_groups() const { return smooth_groups() + anomaly_groups(); }
  void validate() const;
};

/// Uniformly random size-s subset of [0, G), ascending (partial Fisher-Yates).
IndexList sample_support(Index G, Index s, std::uint64_t seed);

/// Supported blocks: independent standard Gaussian directions scaled to the
/// requested magnitudes (one per supported group, in support order).
GroupSparseSignal sample_signal(const GroupPartition& partition, std::span<const Index> support,
                                std::span<const double> magnitudes, std::uint64_t seed);
GroupSparseSignal sample_signal(const GroupPartition& partition, std::span<const Index> support,
                                double magnitude, std::uint64_t seed);

/// Draws w ~ N(0, sigma^2 I) from the seed and forms y = X beta* + w.
SyntheticInstance synthesize(const BlockDictionary& dictionary, const GroupSparseSignal& truth,
                             double sigma, std::uint64_t seed);

/// Full demixing scene on [I_T (x) DCT2D | I_T (x) I_N]. Support, signal and
/// noise use seeds derived from config.seed.
SyntheticInstance build_demix_scene(const SceneConfig& config);

}  // namespace glasso
