#include <cmath>
#include <string>
#include <vector>

#include "glasso/coherence.hpp"
#include "glasso/error.hpp"
#include "glasso/kernels.hpp"
#include "glasso/solver.hpp"

namespace glasso {
namespace {

std::span<const double> cspan(const Vector& v) { return {v.data(), static_cast<Index>(v.size())}; }
std::span<double> mspan(Vector& v) { return {v.data(), static_cast<Index>(v.size())}; }

// out = prox_{step * lambda}(v), group by group.
void prox_groups(const GroupPartition& partition, const Vector& v, std::span<const double> lambdas,
                 double step, Vector& out, std::vector<double>& buffer) {
  for (Index g = 0; g < partition.num_groups(); ++g) {
    const IndexList& cols = partition.group(g);
    buffer.resize(cols.size());
    for (Index k = 0; k < cols.size(); ++k) buffer[k] = v(cols[k]);
    block_soft_threshold_inplace(buffer, step * lambdas[g]);
    for (Index k = 0; k < cols.size(); ++k) out(cols[k]) = buffer[k];
  }
}

double lipschitz_constant(const BlockDictionary& x) {
  const SpectralNormResult s = spectral_norm(x);
  require(s.converged, ErrorCode::not_converged,
          "power iteration for the step size did not converge; use backtracking");
  const double l = s.value * s.value;
  return l > 0.0 ? l : 1.0;
}

}  // namespace

void SolverOptions::validate() const {
  require(max_iterations >= 1, ErrorCode::invalid_argument,
          "solver.max_iterations must be at least 1");
  require(kkt_tolerance > 0.0, ErrorCode::invalid_argument, "solver.kkt_tolerance must be positive");
  require(objective_rel_tolerance > 0.0, ErrorCode::invalid_argument,
          "solver.objective_rel_tolerance must be positive");
  require(kkt_check_interval >= 1, ErrorCode::invalid_argument,
          "KKT check interval must be at least 1");
}

SolverResult solve_group_lasso(const BlockDictionary& x, const Vector& y,
                               std::span<const double> lambdas, const SolverOptions& options) {
  options.validate();
  const GroupPartition& partition = x.partition();
  const Index n = x.rows(), p = x.cols();
  require(static_cast<Index>(y.size()) == n, ErrorCode::dimension_mismatch,
          "observation length does not match the dictionary");
  require(lambdas.size() == partition.num_groups(), ErrorCode::dimension_mismatch,
          "need one lambda per group");
  for (double l : lambdas)
    require(l > 0.0 && std::isfinite(l), ErrorCode::invalid_argument, "lambda_g must be positive");

  const bool backtrack = options.step_rule == StepRule::backtracking;
  double L = backtrack ? 1.0 : lipschitz_constant(x);
  constexpr double eta = 0.5;

  Vector beta = Vector::Zero(p), xbeta = Vector::Zero(n);
  Vector z = beta, xz = xbeta;
  Vector cand(p), xcand(n), grad(p), step_point(p), diff(n), corr(p);
  std::vector<double> buffer;
  double t = 1.0;

  SolverResult result;
  KktReport kkt;
  bool converged = false;
  Index k = 0;
  for (k = 1; k <= options.max_iterations; ++k) {
    diff = xz - y;
    x.apply_transpose(cspan(diff), mspan(grad));
    if (!backtrack) {
      step_point = z - grad / L;
      prox_groups(partition, step_point, lambdas, 1.0 / L, cand, buffer);
      x.apply(cspan(cand), mspan(xcand));
    } else {
      const double fz = 0.5 * kernels::sumsq(cspan(diff));
      for (;;) {
        step_point = z - grad / L;
        prox_groups(partition, step_point, lambdas, 1.0 / L, cand, buffer);
        x.apply(cspan(cand), mspan(xcand));
        diff = xcand - y;
        const double fc = 0.5 * kernels::sumsq(cspan(diff));
        const Vector d = cand - z;
        const double model = fz + grad.dot(d) + 0.5 * L * d.squaredNorm();
        if (fc <= model + 1e-12 * std::max(1.0, std::abs(fz))) break;
        L /= eta;
      }
    }

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const bool restart = options.restart && (z - cand).dot(cand - beta) > 0.0;
    if (restart) {
      t = 1.0;
      z = cand;
      xz = xcand;
    } else {
      const double momentum = (t - 1.0) / t_next;
      z = cand + momentum * (cand - beta);
      xz = xcand + momentum * (xcand - xbeta);
      t = t_next;
    }
    beta.swap(cand);
    xbeta.swap(xcand);

    diff = y - xbeta;
    result.objective_trace.push_back(objective_from_residual(partition, diff, beta, lambdas));

    if (k == 1 || k % options.kkt_check_interval == 0 || k == options.max_iterations) {
      x.apply_transpose(cspan(diff), mspan(corr));
      kkt = kkt_from_correlation(partition, beta, corr, lambdas, options.kkt_tolerance);
      if (kkt.satisfied) {
        converged = true;
        break;
      }
    }
  }

  result.iterations = std::min(k, options.max_iterations);
  result.kkt_residual = kkt.residual;
  result.converged = converged;
  result.final_objective = result.objective_trace.back();
  result.estimate = GroupSparseSignal::from_coefficients(std::move(beta), partition);
  return result;
}

}  // namespace glasso
