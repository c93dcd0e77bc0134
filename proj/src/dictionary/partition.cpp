#include "glasso/partition.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "glasso/error.hpp"

namespace glasso {

GroupPartition GroupPartition::contiguous(std::span<const Index> sizes) {
  require(!sizes.empty(), ErrorCode::empty_partition, "size list is empty");
  GroupPartition out;
  Index next = 0;
  out.groups_.reserve(sizes.size());
  for (Index g = 0; g < sizes.size(); ++g) {
    require(sizes[g] > 0, ErrorCode::zero_group_size, "group " + std::to_string(g) + " has size 0");
    IndexList idx(sizes[g]);
    for (Index k = 0; k < sizes[g]; ++k) idx[k] = next++;
    out.groups_.push_back(std::move(idx));
  }
  out.p_ = next;
  out.finalize();
  return out;
}

GroupPartition GroupPartition::from_sets(std::vector<IndexList> groups, Index p) {
  require(!groups.empty(), ErrorCode::empty_partition, "no groups given");
  std::vector<char> seen(p, 0);
  Index covered = 0;
  for (Index g = 0; g < groups.size(); ++g) {
    auto& set = groups[g];
    require(!set.empty(), ErrorCode::zero_group_size, "group " + std::to_string(g) + " is empty");
    std::sort(set.begin(), set.end());
    for (Index j : set) {
      require(j < p, ErrorCode::non_covering_groups,
              "index " + std::to_string(j) + " outside [0, " + std::to_string(p) + ")");
      require(!seen[j], ErrorCode::overlapping_groups,
              "index " + std::to_string(j) + " appears in more than one group");
      seen[j] = 1;
      ++covered;
    }
  }
  require(covered == p, ErrorCode::non_covering_groups,
          std::to_string(p - covered) + " column(s) not assigned to any group");
  GroupPartition out;
  out.groups_ = std::move(groups);
  out.p_ = p;
  out.finalize();
  return out;
}

GroupPartition GroupPartition::singletons(Index p) {
  std::vector<Index> sizes(p, 1);
  return contiguous(sizes);
}

void GroupPartition::finalize() {
  owner_.assign(p_, 0);
  d_min_ = std::numeric_limits<Index>::max();
  d_max_ = 0;
  for (Index g = 0; g < groups_.size(); ++g) {
    for (Index j : groups_[g]) owner_[j] = g;
    d_min_ = std::min(d_min_, groups_[g].size());
    d_max_ = std::max(d_max_, groups_[g].size());
  }
}

std::vector<Index> GroupPartition::sizes() const {
  std::vector<Index> out(groups_.size());
  for (Index g = 0; g < groups_.size(); ++g) out[g] = groups_[g].size();
  return out;
}

bool GroupPartition::is_contiguous() const {
  Index next = 0;
  for (const auto& set : groups_) {
    for (Index j : set) {
      if (j != next++) return false;
    }
  }
  return true;
}

GroupPartition GroupPartition::permuted(std::span<const Index> order) const {
  require(order.size() == groups_.size(), ErrorCode::dimension_mismatch,
          "permutation length differs from group count");
  std::vector<IndexList> sets;
  sets.reserve(order.size());
  for (Index g : order) {
    require(g < groups_.size(), ErrorCode::invalid_argument, "permutation entry out of range");
    sets.push_back(groups_[g]);
  }
  return from_sets(std::move(sets), p_);
}

IndexList GroupPartition::columns_of(std::span<const Index> group_ids) const {
  IndexList out;
  for (Index g : group_ids) out.insert(out.end(), groups_[g].begin(), groups_[g].end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace glasso
