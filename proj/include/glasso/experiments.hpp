#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "glasso/lambda.hpp"
#include "glasso/model.hpp"
#include "glasso/solver.hpp"

namespace glasso {

/// finalize(base ^ (s_index * 0x9E3779B97F4A7C15 + alpha_index * 0xBF58476D1CE4E5B9
///                  + trial_index * 0x94D049BB133111EB)), arithmetic mod 2^64.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t s_index,
                         std::uint64_t alpha_index, std::uint64_t trial_index);

struct PhaseConfig {
  /// side, T, D and sigma are used; support size, alpha and seed come from the grid.
  SceneConfig scene;
  std::vector<Index> s_values;
  std::vector<double> alpha_values;
  Index trials_per_cell = 50;
  LambdaMode lambda_mode = LambdaMode::experiment;
  double lambda1 = 0.0;  ///< explicit mode only
  double lambda2 = 0.0;
  double epsilon_override = 0.0;  ///< theorem1 mode only
  double epsilon_p = 1e-6;
  std::uint64_t base_seed = 0;
  SolverOptions solver;

  void validate() const;
  /// side 16, T 4, D 4, sigma 1, s in {1,2,4,8,16,32}, alpha = 0.5 * 2^k up to 64,
  /// 50 trials per cell, experiment lambdas.
  static PhaseConfig desk_default();
};

struct TrialOutcome {
  bool success = false;
  bool converged = false;
  double precision = 0.0;
  double recall = 0.0;
  Index iterations = 0;
};

struct PhaseCell {
  Index trials = 0;
  Index successes = 0;
  Index nonconverged = 0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_iterations = 0.0;
  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct PhaseGrid {
  PhaseConfig config;
  /// s-major: cell (si, ai) at si * |alpha_values| + ai.
  std::vector<PhaseCell> cells;
  Index nonconverged = 0;

  const PhaseCell& cell(Index si, Index ai) const {
    return cells[si * config.alpha_values.size() + ai];
  }
};

/// One trial of cell (si, ai): scene with s groups drawn uniformly over all
/// groups, solved by alternating minimization; success is an exact support
/// match of a converged solve.
TrialOutcome run_trial(const PhaseConfig& config, Index si, Index ai, Index trial);

/// All cells. Trials run on `workers` threads (0 = hardware concurrency);
/// aggregation is in trial order, so the grid does not depend on workers.
PhaseGrid run_phase_sweep(const PhaseConfig& config, Index workers = 0);

struct BoundaryPoint {
  Index s = 0;
  double alpha = 0.0;
  bool present = false;  ///< false when the column's rates are all equal
};

struct Boundary {
  std::vector<BoundaryPoint> points;
  double slope = 0.0;  ///< least-squares slope of log alpha vs log s
  bool slope_defined = false;
};

/// Per s, the alpha whose success rate is nearest 0.5. Ties prefer alphas
/// adjacent to where the rate crosses 0.5, then the smaller alpha.
Boundary extract_boundary(const PhaseGrid& grid);

/// Header "s,alpha,trials,successes,rate,mean_precision,mean_recall", s-major.
std::string phase_csv(const PhaseGrid& grid);
/// Binary P5, width |s|, height |alpha|, top row = largest alpha,
/// pixel = round(255 rate) with halves away from zero.
std::string phase_pgm(const PhaseGrid& grid);
void render(const PhaseGrid& grid, const std::filesystem::path& csv_path,
            const std::filesystem::path& pgm_path);

/// Config in the nested key layout of the CLI config file
/// (scene.*, seed, lambda.*, solver.*, phase.*).
nlohmann::json phase_config_json(const PhaseConfig& config);
PhaseConfig phase_config_from_json(const nlohmann::json& j);

/// Run manifest: config echo, seed, version, tallies, boundary.
nlohmann::json phase_manifest(const PhaseGrid& grid, const Boundary& boundary);
/// Grid stored in a manifest (for re-rendering).
PhaseGrid grid_from_manifest(const nlohmann::json& manifest);

/// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace glasso
