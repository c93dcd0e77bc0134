#pragma once

#include <optional>
#include <string>
#include <vector>

#include "glasso/lambda.hpp"
#include "glasso/model.hpp"
#include "glasso/solver.hpp"

namespace glasso {

/// Default c4 = 1 / (8 sqrt(2 (1 + 4 ln 2))), the largest admissible value.
double default_c4();

struct RestrictedSolution {
  IndexList support;          ///< true support groups G*
  IndexList columns;          ///< S*, ascending
  Vector beta;                ///< restricted minimizer on S* (length |S*|)
  SolverResult result;        ///< solve on the column-restricted dictionary
};

/// Group Lasso restricted to the columns of the true support. Refuses
/// (rank_deficient) when X_S* lacks full column rank. The solve uses
/// min(options.kkt_tolerance, 1e-9 lambda_min) so the on-support dual is
/// accurate to about 1e-9.
RestrictedSolution solve_restricted(const SyntheticInstance& instance,
                                    std::span<const double> lambdas,
                                    const SolverOptions& options = {});

struct GroupPerturbation {
  Index group = 0;
  double truth_norm = 0.0;       ///< ||beta*_g||
  double restricted_norm = 0.0;  ///< ||check beta_g||
  double h_norm = 0.0;           ///< ||check beta_g - beta*_g||
  double u_norm = 0.0;           ///< ||check z_g - beta*_g / ||beta*_g|| ||
  double dual_norm = 0.0;        ///< ||check z_g||
};

struct PDWCertificate {
  RestrictedSolution restricted;
  /// Full-length dual: on S*, Lambda^-1 X_S^T (y - X_S check beta); off S*,
  /// (1/lambda_g) X_g^T [X_S (beta*_S - check beta_S) + w].
  Vector dual;
  IndexList off_support;
  std::vector<double> off_support_norms;
  double max_off_support_norm = 0.0;
  Index worst_off_support_group = 0;
  bool strictly_feasible = false;
  bool support_rank_ok = false;
  /// Every restricted block on G* is nonzero.
  bool restricted_nonvanishing = false;
  std::vector<GroupPerturbation> perturbations;
};

/// Primal-dual witness for the true support. lambdas are the weights on
/// the raw observations (use LambdaSchedule::raw_weights for scaled modes).
PDWCertificate construct_pdw(const SyntheticInstance& instance, std::span<const double> lambdas,
                             const SolverOptions& options = {});

struct ConditionRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  std::string formula;
  double margin() const { return rhs - lhs; }
};

struct EventOptions {
  double c4 = default_c4();
  /// E4 needs u from a certificate; without one, check_events fails unless
  /// this is false (E4 is then reported as not evaluated).
  bool require_e4 = true;
};

/// E1..E5. For E3-E5 lhs is max over off-support g of (term_g / lambda_g)
/// and rhs is 1/4.
struct EventReport {
  ConditionRecord e1, e2, e3, e4, e5;
  bool e4_evaluated = false;
  double gamma = 0.0;
  /// Per off-support group terms (divided by lambda_g), in off_support order.
  IndexList off_support;
  std::vector<double> e3_terms, e4_terms, e5_terms;
  bool all_hold() const;
};

EventReport check_events(const SyntheticInstance& instance, std::span<const double> lambdas,
                         const PDWCertificate* certificate, const EventOptions& options = {});

struct ConditionConstants {
  double c0 = 0.067;
  double c1 = 0.001;
  double c2 = 0.0;
  double c2_prime = 0.0;
  double c4 = 0.0;
  double c5 = 0.001;
  double c6 = 0.01;
  double epsilon = 0.0;
  double epsilon_lower_bound = 0.0;
  double gamma = 0.0;
};

struct ConditionReport {
  std::vector<ConditionRecord> conditions;
  ConditionConstants constants;
  std::vector<double> implied_lambdas;  ///< per group
  std::vector<double> error_radii;      ///< per support group, support order
  bool overall = false;

  const ConditionRecord& find(const std::string& name) const;
};

struct Theorem1Options {
  double c0 = 0.067;
  double c1 = 0.001;
  std::optional<double> epsilon_override;
};

/// c2 = [sqrt(9 + (1/4 - 3 c0 - 48 c1) / 2) - 3]^2, the largest admissible value.
double theorem1_c2(double c0, double c1);

/// Evaluates the sufficient conditions for exact group support recovery.
/// truth_norms lists ||beta*_g|| for g in support (same order). Nothing is
/// raised for unsatisfied conditions.
ConditionReport check_theorem1(const BlockDictionary& x, std::span<const Index> support,
                               std::span<const double> truth_norms, double sigma,
                               const Theorem1Options& options = {});

struct Corollary1Options {
  double c1 = 0.001;
  double c2 = 0.0001;
  std::optional<double> epsilon_override;
};

/// Demixing specialization. smooth_norms and anomaly_norms are the norms of
/// the nonzero groups of each component (s1 and s2 entries).
ConditionReport check_corollary1(Index N, Index T, Index D, double sigma,
                                 std::span<const double> smooth_norms,
                                 std::span<const double> anomaly_norms,
                                 const Corollary1Options& options = {});

}  // namespace glasso
