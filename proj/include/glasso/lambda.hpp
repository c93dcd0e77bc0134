#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "glasso/partition.hpp"

namespace glasso {

enum class LambdaMode {
  explicit_values,
  theorem1,            ///< 4 sigma (1 + eps) sqrt(d_g)
  experiment,          ///< (5/alpha) sqrt(d_g) on observations scaled by 1/alpha
  experiment_literal,  ///< (5/alpha) sqrt(d_g) on raw observations
};

std::string_view to_string(LambdaMode mode);
LambdaMode parse_lambda_mode(std::string_view text);

/// Per-group regularization weights.
///
/// observation_scale is the factor the solver applies to y before solving;
/// estimates are divided by it afterwards. It is 1 except in experiment
/// mode, where the weights (5/alpha) sqrt(d_g) act on y/alpha. That pairing
/// is the same problem as weights 5 sqrt(d_g) on y, up to scaling of the
/// minimizer by alpha.
struct LambdaSchedule {
  std::vector<double> per_group;
  LambdaMode mode = LambdaMode::explicit_values;
  double sigma = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double observation_scale = 1.0;

  double lambda_min() const;
  double lambda_max() const;
  std::span<const double> values() const { return per_group; }
  /// Weights that give the same support on unscaled observations:
  /// per_group / observation_scale.
  std::vector<double> raw_weights() const;
  void validate(Index num_groups) const;

  static LambdaSchedule explicit_values(std::vector<double> per_group);
  /// lambda1 on the first `first_groups` groups, lambda2 on the rest.
  static LambdaSchedule two_level(Index first_groups, Index second_groups, double lambda1,
                                  double lambda2);
  static LambdaSchedule theorem1(const GroupPartition& partition, double sigma, double epsilon);
  static LambdaSchedule experiment(const GroupPartition& partition, double alpha);
  static LambdaSchedule experiment_literal(const GroupPartition& partition, double alpha);
};

/// The two weights of a demixing problem plus the observation scale.
struct DemixWeights {
  double lambda1 = 0.0;  ///< smooth (temporal) groups of size T
  double lambda2 = 0.0;  ///< anomaly tile groups of size D T
  double observation_scale = 1.0;
};

/// theorem1 uses epsilon = sqrt(2 log(2NT) / T) unless epsilon_override is
/// larger; explicit returns (lambda1, lambda2) as given.
DemixWeights demix_weights(LambdaMode mode, Index N, Index T, Index D, double alpha, double sigma,
                           double lambda1, double lambda2, double epsilon_override = 0.0);

/// Lower bound sqrt((1 + mu_I) log(p G) / d_min) on epsilon for a generic dictionary.
double theorem1_epsilon(double mu_I, Index p, Index G, Index d_min);
/// Lower bound sqrt(2 log(2 N T) / T) on epsilon for the demixing scene.
double demix_epsilon(Index N, Index T);

}  // namespace glasso
