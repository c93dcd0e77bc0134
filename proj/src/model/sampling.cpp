#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "glasso/error.hpp"
#include "glasso/model.hpp"
#include "glasso/rng.hpp"

namespace glasso {

IndexList sample_support(Index G, Index s, std::uint64_t seed) {
  require(G >= 1, ErrorCode::invalid_argument, "group count must be positive");
  require(s <= G, ErrorCode::invalid_argument,
          "support size " + std::to_string(s) + " exceeds group count " + std::to_string(G));
  IndexList pool(G);
  std::iota(pool.begin(), pool.end(), Index{0});
  Rng rng(seed);
  for (Index i = 0; i < s; ++i) {
    const Index j = i + static_cast<Index>(rng.uniform_int(G - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(s);
  std::sort(pool.begin(), pool.end());
  return pool;
}

GroupSparseSignal sample_signal(const GroupPartition& partition, std::span<const Index> support,
                                std::span<const double> magnitudes, std::uint64_t seed) {
  require(magnitudes.size() == support.size(), ErrorCode::invalid_argument,
          "need one magnitude per supported group");
  IndexList sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorCode::invalid_argument, "support lists a group twice");
  require(sorted.empty() || sorted.back() < partition.num_groups(), ErrorCode::invalid_argument,
          "support group out of range");

  GroupSparseSignal out;
  out.coefficients = Vector::Zero(partition.num_columns());
  Rng rng(seed);
  for (Index k = 0; k < support.size(); ++k) {
    const double mag = magnitudes[k];
    require(mag > 0.0 && std::isfinite(mag), ErrorCode::invalid_argument,
            "group magnitudes must be positive");
    const IndexList& cols = partition.group(support[k]);
    std::vector<double> v(cols.size());
    double norm = 0.0;
    while (norm == 0.0) {
      for (double& e : v) e = rng.gaussian();
      double ss = 0.0;
      for (double e : v) ss += e * e;
      norm = std::sqrt(ss);
    }
    for (Index i = 0; i < cols.size(); ++i) out.coefficients(cols[i]) = v[i] * (mag / norm);
  }
  out.partition = partition;
  out.support = std::move(sorted);
  return out;
}

GroupSparseSignal sample_signal(const GroupPartition& partition, std::span<const Index> support,
                                double magnitude, std::uint64_t seed) {
  const std::vector<double> mags(support.size(), magnitude);
  return sample_signal(partition, support, mags, seed);
}

}  // namespace glasso
