#include "glasso/certify.hpp"
#include "glasso/json_report.hpp"

namespace glasso {
namespace {

nlohmann::json record_json(const ConditionRecord& r) {
  return {{"name", r.name},       {"lhs", r.lhs},   {"rhs", r.rhs},
          {"margin", r.margin()}, {"satisfied", r.satisfied}, {"formula", r.formula}};
}

}  // namespace

nlohmann::json certificate_json(const PDWCertificate& cert) {
  nlohmann::json j;
  j["support"] = cert.restricted.support;
  j["restricted_converged"] = cert.restricted.result.converged;
  j["restricted_kkt_residual"] = cert.restricted.result.kkt_residual;
  j["max_off_support_norm"] = cert.max_off_support_norm;
  j["worst_off_support_group"] = cert.worst_off_support_group;
  j["strictly_feasible"] = cert.strictly_feasible;
  j["support_rank_ok"] = cert.support_rank_ok;
  j["restricted_nonvanishing"] = cert.restricted_nonvanishing;
  nlohmann::json per = nlohmann::json::array();
  for (const GroupPerturbation& gp : cert.perturbations) {
    per.push_back({{"group", gp.group},
                   {"truth_norm", gp.truth_norm},
                   {"restricted_norm", gp.restricted_norm},
                   {"h_norm", gp.h_norm},
                   {"u_norm", gp.u_norm},
                   {"dual_norm", gp.dual_norm}});
  }
  j["per_group"] = std::move(per);
  return j;
}

nlohmann::json events_json(const EventReport& events) {
  nlohmann::json j;
  j["gamma"] = events.gamma;
  nlohmann::json list = nlohmann::json::array();
  for (const ConditionRecord* r : {&events.e1, &events.e2, &events.e3, &events.e4, &events.e5}) {
    nlohmann::json rj = record_json(*r);
    if (r == &events.e4) rj["evaluated"] = events.e4_evaluated;
    list.push_back(std::move(rj));
  }
  j["events"] = std::move(list);
  j["all_hold"] = events.all_hold();
  return j;
}

nlohmann::json conditions_json(const ConditionReport& report) {
  nlohmann::json j;
  nlohmann::json list = nlohmann::json::array();
  for (const ConditionRecord& r : report.conditions) list.push_back(record_json(r));
  j["conditions"] = std::move(list);
  const ConditionConstants& k = report.constants;
  j["constants"] = {{"c0", k.c0},           {"c1", k.c1},
                    {"c2", k.c2},           {"c2_prime", k.c2_prime},
                    {"c4", k.c4},           {"c5", k.c5},
                    {"c6", k.c6},           {"epsilon", k.epsilon},
                    {"epsilon_lower_bound", k.epsilon_lower_bound},
                    {"gamma", k.gamma}};
  j["implied_lambdas"] = report.implied_lambdas;
  j["error_radii"] = report.error_radii;
  j["overall"] = report.overall;
  return j;
}

}  // namespace glasso
