#pragma once

#include <span>
#include <vector>

#include "glasso/types.hpp"

namespace glasso {

/// Non-overlapping partition of the column indices {0, ..., p-1} into groups.
///
/// Groups keep their index sets sorted; the group order is the order given
/// at construction. Groups may be non-contiguous.
class GroupPartition {
 public:
  GroupPartition() = default;

  /// Consecutive groups of the given sizes.
  static GroupPartition contiguous(std::span<const Index> sizes);
  /// Explicit index sets; validates that they are a disjoint cover of [0, p).
  static GroupPartition from_sets(std::vector<IndexList> groups, Index p);
  /// p singleton groups (the plain Lasso case).
  static GroupPartition singletons(Index p);

  Index num_groups() const { return groups_.size(); }
  Index num_columns() const { return p_; }
  const IndexList& group(Index g) const { return groups_[g]; }
  const std::vector<IndexList>& groups() const { return groups_; }
  Index group_size(Index g) const { return groups_[g].size(); }
  Index d_min() const { return d_min_; }
  Index d_max() const { return d_max_; }
  Index group_of(Index column) const { return owner_[column]; }
  std::vector<Index> sizes() const;
  bool is_contiguous() const;

  /// Same groups in a new order: result group k is this group order[k].
  GroupPartition permuted(std::span<const Index> order) const;

  /// Union of the index sets of the listed groups, ascending.
  IndexList columns_of(std::span<const Index> group_ids) const;

  friend bool operator==(const GroupPartition& a, const GroupPartition& b) {
    return a.p_ == b.p_ && a.groups_ == b.groups_;
  }

 private:
  void finalize();

  std::vector<IndexList> groups_;
  IndexList owner_;
  Index p_ = 0;
  Index d_min_ = 0;
  Index d_max_ = 0;
};

/// Contiguous partition from a list of positive sizes.
inline GroupPartition make_partition(std::span<const Index> sizes) {
  return GroupPartition::contiguous(sizes);
}

}  // namespace glasso
