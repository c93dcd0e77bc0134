#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "glasso/error.hpp"
#include "glasso/experiments.hpp"

namespace glasso {

void PhaseConfig::validate() const {
  require(!s_values.empty(), ErrorCode::invalid_argument, "phase.s_values must be nonempty");
  require(!alpha_values.empty(), ErrorCode::invalid_argument,
          "phase.alpha_values must be nonempty");
  require(std::is_sorted(s_values.begin(), s_values.end()) &&
              std::adjacent_find(s_values.begin(), s_values.end()) == s_values.end(),
          ErrorCode::invalid_argument, "phase.s_values must be strictly ascending");
  require(std::is_sorted(alpha_values.begin(), alpha_values.end()) &&
              std::adjacent_find(alpha_values.begin(), alpha_values.end()) == alpha_values.end(),
          ErrorCode::invalid_argument, "phase.alpha_values must be strictly ascending");
  require(alpha_values.front() > 0.0, ErrorCode::invalid_argument,
          "phase.alpha_values must be positive");
  require(trials_per_cell >= 1, ErrorCode::invalid_argument,
          "phase.trials_per_cell must be at least 1");
  require(epsilon_p > 0.0, ErrorCode::invalid_argument, "phase.epsilon_p must be positive");
  SceneConfig probe = scene;
  probe.uniform_support = true;
  probe.s1 = s_values.back();
  probe.s2 = 0;
  probe.alpha = alpha_values.front();
  probe.validate();
  solver.validate();
}

PhaseConfig PhaseConfig::desk_default() {
  PhaseConfig c;
  c.scene.side = 16;
  c.scene.T = 4;
  c.scene.D = 4;
  c.scene.sigma = 1.0;
  c.s_values = {1, 2, 4, 8, 16, 32};
  for (double a = 0.5; a <= 64.0; a *= 2.0) c.alpha_values.push_back(a);
  c.trials_per_cell = 50;
  return c;
}

TrialOutcome run_trial(const PhaseConfig& config, Index si, Index ai, Index trial) {
  SceneConfig scene = config.scene;
  scene.uniform_support = true;
  scene.s1 = config.s_values[si];
  scene.s2 = 0;
  scene.alpha = config.alpha_values[ai];
  scene.seed = trial_seed(config.base_seed, si, ai, trial);
  const SyntheticInstance inst = build_demix_scene(scene);

  const DemixWeights w =
      demix_weights(config.lambda_mode, scene.pixels(), scene.T, scene.D, scene.alpha,
                    scene.sigma, config.lambda1, config.lambda2, config.epsilon_override);
  const DemixGeometry geometry{scene.side, scene.side, scene.T, scene.D};
  const Vector y = inst.observations * w.observation_scale;
  DemixResult solved = solve_demix(y, geometry, w.lambda1, w.lambda2, config.solver);

  GroupSparseSignal estimate = std::move(solved.result.estimate);
  estimate.coefficients /= w.observation_scale;
  const SupportMatch match = extract_group_support(estimate, inst.truth, config.epsilon_p);

  TrialOutcome out;
  out.converged = solved.result.converged;
  out.success = out.converged && match.exact_match;
  out.precision = match.precision;
  out.recall = match.recall;
  out.iterations = solved.result.iterations;
  return out;
}

PhaseGrid run_phase_sweep(const PhaseConfig& config, Index workers) {
  config.validate();
  const Index ns = config.s_values.size(), na = config.alpha_values.size();
  const Index per_cell = config.trials_per_cell;
  const Index total = ns * na * per_cell;
  std::vector<TrialOutcome> outcomes(total);

  if (workers == 0) workers = std::max<Index>(1, std::thread::hardware_concurrency());
  workers = std::min(workers, total);

  std::atomic<Index> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const Index task = next.fetch_add(1);
      if (task >= total) return;
      const Index cell = task / per_cell, trial = task % per_cell;
      try {
        outcomes[task] = run_trial(config, cell / na, cell % na, trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(total);
        return;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (Index i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  PhaseGrid grid;
  grid.config = config;
  grid.cells.resize(ns * na);
  for (Index c = 0; c < ns * na; ++c) {
    PhaseCell& cell = grid.cells[c];
    double prec = 0.0, rec = 0.0, iters = 0.0;
    for (Index t = 0; t < per_cell; ++t) {
      const TrialOutcome& o = outcomes[c * per_cell + t];
      ++cell.trials;
      if (o.success) ++cell.successes;
      if (!o.converged) ++cell.nonconverged;
      prec += o.precision;
      rec += o.recall;
      iters += static_cast<double>(o.iterations);
    }
    const double n = static_cast<double>(cell.trials);
    cell.mean_precision = prec / n;
    cell.mean_recall = rec / n;
    cell.mean_iterations = iters / n;
    grid.nonconverged += cell.nonconverged;
  }
  return grid;
}

}  // namespace glasso
