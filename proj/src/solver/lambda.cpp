#include <algorithm>
#include <cmath>
#include <string>

#include "glasso/error.hpp"
#include "glasso/lambda.hpp"

namespace glasso {

std::string_view to_string(LambdaMode mode) {
  switch (mode) {
    case LambdaMode::explicit_values: return "explicit";
    case LambdaMode::theorem1: return "theorem1";
    case LambdaMode::experiment: return "experiment";
    case LambdaMode::experiment_literal: return "experiment_literal";
  }
  return "explicit";
}

LambdaMode parse_lambda_mode(std::string_view text) {
  if (text == "explicit") return LambdaMode::explicit_values;
  if (text == "theorem1") return LambdaMode::theorem1;
  if (text == "experiment") return LambdaMode::experiment;
  if (text == "experiment_literal") return LambdaMode::experiment_literal;
  fail(ErrorCode::invalid_argument,
       "lambda.mode must be explicit, theorem1, experiment or experiment_literal, got '" +
           std::string(text) + "'");
}

double LambdaSchedule::lambda_min() const {
  require(!per_group.empty(), ErrorCode::invalid_argument, "empty lambda schedule");
  return *std::min_element(per_group.begin(), per_group.end());
}

double LambdaSchedule::lambda_max() const {
  require(!per_group.empty(), ErrorCode::invalid_argument, "empty lambda schedule");
  return *std::max_element(per_group.begin(), per_group.end());
}

std::vector<double> LambdaSchedule::raw_weights() const {
  std::vector<double> out(per_group);
  for (double& l : out) l /= observation_scale;
  return out;
}

void LambdaSchedule::validate(Index num_groups) const {
  require(per_group.size() == num_groups, ErrorCode::dimension_mismatch,
          "lambda schedule has " + std::to_string(per_group.size()) + " entries for " +
              std::to_string(num_groups) + " groups");
  for (double l : per_group)
    require(l > 0.0 && std::isfinite(l), ErrorCode::invalid_argument,
            "every lambda_g must be positive and finite");
  require(observation_scale > 0.0 && std::isfinite(observation_scale),
          ErrorCode::invalid_argument, "observation scale must be positive");
}

LambdaSchedule LambdaSchedule::explicit_values(std::vector<double> per_group) {
  LambdaSchedule s;
  s.per_group = std::move(per_group);
  s.validate(s.per_group.size());
  return s;
}

LambdaSchedule LambdaSchedule::two_level(Index first_groups, Index second_groups, double lambda1,
                                         double lambda2) {
  std::vector<double> v(first_groups, lambda1);
  v.insert(v.end(), second_groups, lambda2);
  return explicit_values(std::move(v));
}

LambdaSchedule LambdaSchedule::theorem1(const GroupPartition& partition, double sigma,
                                        double epsilon) {
  require(sigma > 0.0, ErrorCode::invalid_argument, "theorem1 lambdas need sigma > 0");
  require(epsilon >= 0.0, ErrorCode::invalid_argument, "epsilon must be nonnegative");
  LambdaSchedule s;
  s.mode = LambdaMode::theorem1;
  s.sigma = sigma;
  s.epsilon = epsilon;
  s.per_group.resize(partition.num_groups());
  for (Index g = 0; g < partition.num_groups(); ++g)
    s.per_group[g] =
        4.0 * sigma * (1.0 + epsilon) * std::sqrt(static_cast<double>(partition.group_size(g)));
  return s;
}

LambdaSchedule LambdaSchedule::experiment(const GroupPartition& partition, double alpha) {
  LambdaSchedule s = experiment_literal(partition, alpha);
  s.mode = LambdaMode::experiment;
  s.observation_scale = 1.0 / alpha;
  return s;
}

LambdaSchedule LambdaSchedule::experiment_literal(const GroupPartition& partition, double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::invalid_argument,
          "experiment lambdas need alpha > 0");
  LambdaSchedule s;
  s.mode = LambdaMode::experiment_literal;
  s.alpha = alpha;
  s.per_group.resize(partition.num_groups());
  for (Index g = 0; g < partition.num_groups(); ++g)
    s.per_group[g] = (5.0 / alpha) * std::sqrt(static_cast<double>(partition.group_size(g)));
  return s;
}

DemixWeights demix_weights(LambdaMode mode, Index N, Index T, Index D, double alpha, double sigma,
                           double lambda1, double lambda2, double epsilon_override) {
  const double t = static_cast<double>(T), d = static_cast<double>(D);
  DemixWeights w;
  switch (mode) {
    case LambdaMode::explicit_values:
      w.lambda1 = lambda1;
      w.lambda2 = lambda2;
      break;
    case LambdaMode::theorem1: {
      require(sigma > 0.0, ErrorCode::invalid_argument, "theorem1 lambdas need sigma > 0");
      const double eps = std::max(demix_epsilon(N, T), epsilon_override);
      w.lambda1 = 4.0 * sigma * (1.0 + eps) * std::sqrt(t);
      w.lambda2 = w.lambda1 * std::sqrt(d);
      break;
    }
    case LambdaMode::experiment:
    case LambdaMode::experiment_literal:
      require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::invalid_argument,
              "experiment lambdas need alpha > 0");
      w.lambda1 = (5.0 / alpha) * std::sqrt(t);
      w.lambda2 = w.lambda1 * std::sqrt(d);
      if (mode == LambdaMode::experiment) w.observation_scale = 1.0 / alpha;
      break;
  }
  require(w.lambda1 > 0.0 && w.lambda2 > 0.0, ErrorCode::invalid_argument,
          "lambda.lambda1 and lambda.lambda2 must be positive");
  return w;
}

double theorem1_epsilon(double mu_I, Index p, Index G, Index d_min) {
  require(d_min >= 1 && p >= 1 && G >= 1, ErrorCode::invalid_argument,
          "epsilon bound needs positive dimensions");
  return std::sqrt((1.0 + mu_I) * std::log(static_cast<double>(p) * static_cast<double>(G)) /
                   static_cast<double>(d_min));
}

double demix_epsilon(Index N, Index T) {
  require(N >= 1 && T >= 1, ErrorCode::invalid_argument, "epsilon bound needs N, T >= 1");
  return std::sqrt(2.0 * std::log(2.0 * static_cast<double>(N) * static_cast<double>(T)) /
                   static_cast<double>(T));
}

}  // namespace glasso
