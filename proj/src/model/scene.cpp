#include <cmath>
#include <string>

#include "glasso/error.hpp"
#include "glasso/model.hpp"
#include "glasso/rng.hpp"

namespace glasso {

GroupSparseSignal GroupSparseSignal::from_coefficients(Vector coefficients,
                                                       GroupPartition partition) {
  require(static_cast<Index>(coefficients.size()) == partition.num_columns(),
          ErrorCode::dimension_mismatch, "coefficient length does not match the partition");
  GroupSparseSignal out;
  out.coefficients = std::move(coefficients);
  out.partition = std::move(partition);
  for (Index g = 0; g < out.partition.num_groups(); ++g) {
    if (out.group_norm(g) > 0.0) out.support.push_back(g);
  }
  return out;
}

GroupSparseSignal GroupSparseSignal::zero(GroupPartition partition) {
  const Index p = partition.num_columns();
  return from_coefficients(Vector::Zero(p), std::move(partition));
}

double GroupSparseSignal::group_norm(Index g) const {
  double ss = 0.0;
  for (Index j : partition.group(g)) ss += coefficients(j) * coefficients(j);
  return std::sqrt(ss);
}

std::vector<double> GroupSparseSignal::group_norms() const {
  std::vector<double> out(partition.num_groups());
  for (Index g = 0; g < out.size(); ++g) out[g] = group_norm(g);
  return out;
}

Index GroupSparseSignal::support_dimension() const {
  Index d = 0;
  for (Index g : support) d += partition.group_size(g);
  return d;
}

void SceneConfig::validate() const {
  require(side >= 1, ErrorCode::invalid_argument, "scene.side must be positive");
  require(T >= 1, ErrorCode::invalid_argument, "scene.T must be positive");
  require(D >= 1, ErrorCode::invalid_argument, "scene.D must be positive");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(D))));
  require(d * d == D, ErrorCode::invalid_argument, "scene.D must be a perfect square");
  require(side % d == 0, ErrorCode::invalid_argument,
          "tile side " + std::to_string(d) + " does not divide scene.side");
  require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::invalid_argument,
          "scene.alpha must be positive");
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::invalid_argument,
          "scene.sigma must be nonnegative");
  if (uniform_support) {
    require(s1 + s2 <= total_groups(), ErrorCode::invalid_argument,
            "s1 + s2 exceeds the group count");
  } else {
    require(s1 <= smooth_groups(), ErrorCode::invalid_argument, "scene.s1 exceeds N");
    require(s2 <= anomaly_groups(), ErrorCode::invalid_argument, "scene.s2 exceeds N/D");
  }
}

SyntheticInstance synthesize(const BlockDictionary& dictionary, const GroupSparseSignal& truth,
                             double sigma, std::uint64_t seed) {
  require(truth.partition == dictionary.partition(), ErrorCode::dimension_mismatch,
          "signal partition does not match the dictionary partition");
  require(sigma >= 0.0 && std::isfinite(sigma), ErrorCode::invalid_argument,
          "sigma must be nonnegative");
  SyntheticInstance inst;
  inst.dictionary = dictionary;
  inst.truth = truth;
  inst.sigma = sigma;
  inst.seed = seed;
  const Index n = dictionary.rows();
  inst.noise = Vector::Zero(n);
  if (sigma > 0.0) {
    Rng rng(seed);
    for (Index i = 0; i < n; ++i) inst.noise(i) = sigma * rng.gaussian();
  }
  inst.observations = dictionary.apply(truth.coefficients);
  inst.observations += inst.noise;
  return inst;
}

SyntheticInstance build_demix_scene(const SceneConfig& config) {
  config.validate();
  const BlockDictionary dict = demix_dictionary(config.side, config.side, config.T, config.D);
  const Index g1 = config.smooth_groups();

  IndexList support;
  const std::uint64_t support_seed = derive_seed(config.seed, seed_tag::support);
  if (config.uniform_support) {
    support = sample_support(config.total_groups(), config.s1 + config.s2, support_seed);
  } else {
    support = sample_support(g1, config.s1, support_seed);
    const IndexList second =
        sample_support(config.anomaly_groups(), config.s2, derive_seed(support_seed, 2));
    for (Index g : second) support.push_back(g1 + g);
  }
  const GroupSparseSignal truth = sample_signal(dict.partition(), support, config.alpha,
                                                derive_seed(config.seed, seed_tag::signal));
  SyntheticInstance inst =
      synthesize(dict, truth, config.sigma, derive_seed(config.seed, seed_tag::noise));
  // Record the scene seed; every other seed derives from it.
  inst.seed = config.seed;
  return inst;
}

}  // namespace glasso
