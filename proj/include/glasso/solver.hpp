#pragma once

#include <span>
#include <vector>

#include "glasso/dictionary.hpp"
#include "glasso/model.hpp"

namespace glasso {

enum class StepRule { fixed, backtracking };

struct SolverOptions {
  Index max_iterations = 5000;
  double kkt_tolerance = 1e-6;
  double objective_rel_tolerance = 1e-10;
  StepRule step_rule = StepRule::fixed;
  bool restart = true;
  /// FISTA evaluates the full KKT residual on iteration 1 and every this
  /// many iterations after.
  Index kkt_check_interval = 10;
  /// Demixing sweep order: B2 (anomaly) update before B1 (smooth) update.
  bool anomaly_first = false;

  void validate() const;
};

struct SolverResult {
  GroupSparseSignal estimate;
  Index iterations = 0;
  double final_objective = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
  /// FISTA: objective after each iteration. Demixing: after each half-step.
  std::vector<double> objective_trace;
};

/// argmin_x 1/2 ||x - v||^2 + lambda ||x||_2.
Vector block_soft_threshold(const Vector& v, double lambda);
/// In-place variant on a gathered block.
void block_soft_threshold_inplace(std::span<double> v, double lambda);

/// 1/2 ||y - X beta||^2 + sum_g lambda_g ||beta_g||_2.
double objective(const BlockDictionary& x, const Vector& y, const Vector& beta,
                 std::span<const double> lambdas);
/// Same with a precomputed residual r = y - X beta.
double objective_from_residual(const GroupPartition& partition, const Vector& residual,
                               const Vector& beta, std::span<const double> lambdas);

/// Blocks with norm below this are treated as exactly zero by kkt_check.
inline constexpr double kZeroGroupNorm = 1e-30;

struct KktReport {
  double residual = 0.0;
  Index worst_group = 0;
  /// ||X_g^T (y - X beta)|| / lambda_g for every group (<= 1 required on zero groups).
  std::vector<double> dual_slack;
  std::vector<double> group_residual;
  /// X restricted to the nonzero coordinates has full column rank.
  bool support_full_rank = true;
  Index support_rank = 0;
  Index support_columns = 0;
  bool satisfied = false;
};

/// Per-group KKT residuals given the correlation c = X^T (y - X beta).
KktReport kkt_from_correlation(const GroupPartition& partition, const Vector& beta,
                               const Vector& correlation, std::span<const double> lambdas,
                               double tolerance);

/// Optimality residual of beta. Nonzero groups:
/// ||X_g^T (X beta - y) + lambda_g beta_g / ||beta_g|| ||; zero groups:
/// max(0, ||X_g^T (y - X beta)|| / lambda_g - 1).
KktReport kkt_check(const BlockDictionary& x, const Vector& y, const Vector& beta,
                    std::span<const double> lambdas, double tolerance, bool check_rank = true);

/// Accelerated proximal gradient (FISTA) with optional gradient restart.
/// Stops once the KKT residual is within options.kkt_tolerance; a run that
/// reaches the iteration cap returns converged = false.
SolverResult solve_group_lasso(const BlockDictionary& x, const Vector& y,
                               std::span<const double> lambdas, const SolverOptions& options = {});

/// Frame geometry of a demixing problem.
struct DemixGeometry {
  Index image_rows = 0;
  Index image_cols = 0;
  Index frames = 0;
  Index D = 0;

  Index pixels() const { return image_rows * image_cols; }
  Index length() const { return pixels() * frames; }
  Index smooth_groups() const { return pixels(); }
  Index anomaly_groups() const { return pixels() / D; }
};

struct DemixResult {
  Vector smooth;   ///< B1 as vec, column t*N + k
  Vector anomaly;  ///< B2 as vec
  /// estimate is the stacked [B1; B2] on the demixing dictionary partition.
  SolverResult result;
};

/// Alternating exact minimization over B1 (orthonormal I_T (x) DCT2D,
/// temporal groups, weight lambda1) and B2 (identity, D-tile spatiotemporal
/// groups, weight lambda2). Stops when the relative objective change of a
/// sweep is within objective_rel_tolerance and the stacked KKT residual is
/// within kkt_tolerance.
DemixResult solve_demix(const Vector& y, const DemixGeometry& geometry, double lambda1,
                        double lambda2, const SolverOptions& options = {});

/// Group support declaration with the epsilon_p rule.
struct SupportMatch {
  IndexList declared;
  bool exact_match = false;
  double precision = 1.0;
  double recall = 1.0;
};

/// Group g is declared nonzero iff ||est_g|| > eps_p ||truth_g|| for a true
/// group, or ||est_g|| > eps_p max_g' ||truth_g'|| for a zero true group
/// (eps_p itself when the truth is all zero). Precision is 1 when nothing is
/// declared; recall is 1 when the truth is empty.
SupportMatch extract_group_support(const GroupSparseSignal& estimate,
                                   const GroupSparseSignal& truth, double epsilon_p = 1e-6);

}  // namespace glasso
