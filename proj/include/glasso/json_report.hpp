#pragma once

#include <json.hpp>

#include "glasso/coherence.hpp"
#include "glasso/lambda.hpp"
#include "glasso/solver.hpp"

namespace glasso {

struct PDWCertificate;
struct EventReport;
struct ConditionReport;

/// Fields: iterations, final_objective, kkt_residual, converged, declared
/// support (groups with nonzero estimate blocks, or the epsilon_p rule when a
/// match is given) and, when present, precision/recall/exact_match.
nlohmann::json solver_result_json(const SolverResult& result, const SupportMatch* match = nullptr);
nlohmann::json coherence_json(const CoherenceReport& report);
nlohmann::json lambda_json(const LambdaSchedule& schedule);
nlohmann::json certificate_json(const PDWCertificate& cert);
nlohmann::json events_json(const EventReport& events);
nlohmann::json conditions_json(const ConditionReport& report);

}  // namespace glasso
