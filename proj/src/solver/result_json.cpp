#include "glasso/json_report.hpp"

namespace glasso {

nlohmann::json solver_result_json(const SolverResult& result, const SupportMatch* match) {
  nlohmann::json j;
  j["iterations"] = result.iterations;
  j["final_objective"] = result.final_objective;
  j["kkt_residual"] = result.kkt_residual;
  j["converged"] = result.converged;
  if (match != nullptr) {
    j["declared_support"] = match->declared;
    j["exact_match"] = match->exact_match;
    j["precision"] = match->precision;
    j["recall"] = match->recall;
  } else {
    j["declared_support"] = result.estimate.support;
  }
  return j;
}

nlohmann::json coherence_json(const CoherenceReport& report) {
  nlohmann::json j;
  j["mu_B"] = report.mu_B;
  j["mu_I"] = report.mu_I;
  j["spectral_norm"] = report.spectral_norm;
  j["worst_pair"] = {report.worst_pair.first, report.worst_pair.second};
  j["per_block_gram_deviation"] = report.per_block_gram_deviation;
  return j;
}

nlohmann::json lambda_json(const LambdaSchedule& schedule) {
  nlohmann::json j;
  j["mode"] = std::string(to_string(schedule.mode));
  j["lambda_min"] = schedule.lambda_min();
  j["lambda_max"] = schedule.lambda_max();
  j["observation_scale"] = schedule.observation_scale;
  if (schedule.mode == LambdaMode::theorem1) {
    j["sigma"] = schedule.sigma;
    j["epsilon"] = schedule.epsilon;
  }
  if (schedule.mode == LambdaMode::experiment || schedule.mode == LambdaMode::experiment_literal)
    j["alpha"] = schedule.alpha;
  return j;
}

}  // namespace glasso
