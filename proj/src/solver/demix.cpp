#include <cmath>
#include <string>
#include <vector>

#include "glasso/error.hpp"
#include "glasso/solver.hpp"

namespace glasso {
namespace {

std::span<const double> cspan(const Vector& v) { return {v.data(), static_cast<Index>(v.size())}; }
std::span<double> mspan(Vector& v) { return {v.data(), static_cast<Index>(v.size())}; }

void threshold_groups(const GroupPartition& partition, const Vector& v, double lambda, Vector& out,
                      std::vector<double>& buffer) {
  for (const IndexList& cols : partition.groups()) {
    buffer.resize(cols.size());
    for (Index k = 0; k < cols.size(); ++k) buffer[k] = v(cols[k]);
    block_soft_threshold_inplace(buffer, lambda);
    for (Index k = 0; k < cols.size(); ++k) out(cols[k]) = buffer[k];
  }
}

double penalty(const GroupPartition& partition, const Vector& v, double lambda) {
  double sum = 0.0;
  for (const IndexList& cols : partition.groups()) {
    double ss = 0.0;
    for (Index j : cols) ss += v(j) * v(j);
    sum += std::sqrt(ss);
  }
  return lambda * sum;
}

}  // namespace

DemixResult solve_demix(const Vector& y, const DemixGeometry& geometry, double lambda1,
                        double lambda2, const SolverOptions& options) {
  options.validate();
  require(geometry.image_rows >= 1 && geometry.image_cols >= 1 && geometry.frames >= 1 &&
              geometry.D >= 1,
          ErrorCode::invalid_argument, "demix geometry must be positive");
  require(static_cast<Index>(y.size()) == geometry.length(), ErrorCode::dimension_mismatch,
          "observation length " + std::to_string(y.size()) + " does not match N*T = " +
              std::to_string(geometry.length()));
  require(lambda1 > 0.0 && lambda2 > 0.0, ErrorCode::invalid_argument,
          "lambda1 and lambda2 must be positive");

  const BlockDictionary smooth_dict =
      time_extend(dct2d_basis(geometry.image_rows, geometry.image_cols), geometry.frames,
                  TemporalGroups{});
  const BlockDictionary anomaly_dict =
      time_extend(dirac_basis(geometry.pixels()), geometry.frames,
                  SpatioTemporalGroups{geometry.D, geometry.image_rows, geometry.image_cols});
  const GroupPartition& part1 = smooth_dict.partition();
  const GroupPartition& part2 = anomaly_dict.partition();
  const Index n = geometry.length();

  Vector b1 = Vector::Zero(n), b2 = Vector::Zero(n);
  Vector smooth_image = Vector::Zero(n);  // X1 b1
  Vector work(n), coeffs(n), next(n), next_image(n);
  std::vector<double> buffer;

  auto objective_of = [&](const Vector& img1, const Vector& v1, const Vector& v2) {
    work = y - img1 - v2;
    return 0.5 * work.squaredNorm() + penalty(part1, v1, lambda1) + penalty(part2, v2, lambda2);
  };

  // Objective change of a half-step, from differences so that it stays
  // accurate after the objective itself stops resolving the progress:
  // 1/2|r + d|^2 - 1/2|r|^2 = d.r + 1/2|d|^2 and |a| - |b| = (a-b).(a+b) / (|a|+|b|).
  Vector residual(n), delta_r(n), delta_c(n);
  auto penalty_change = [](const GroupPartition& part, const Vector& from, const Vector& to,
                           double lambda) {
    double sum = 0.0;
    for (const IndexList& cols : part.groups()) {
      double num = 0.0, na = 0.0, nb = 0.0;
      for (Index j : cols) {
        num += (to(j) - from(j)) * (to(j) + from(j));
        na += to(j) * to(j);
        nb += from(j) * from(j);
      }
      const double den = std::sqrt(na) + std::sqrt(nb);
      if (den > 0.0) sum += num / den;
    }
    return lambda * sum;
  };
  auto change_of = [&](const Vector& from, const Vector& to, const Vector& image_delta,
                       const GroupPartition& part, double lambda) {
    residual = y - smooth_image - b2;
    return -image_delta.dot(residual) + 0.5 * image_delta.squaredNorm() +
           penalty_change(part, from, to, lambda);
  };

  // Exact minimization over B1 with B2 fixed: X1 is orthonormal, so the
  // minimizer thresholds X1^T (y - B2) group by group.
  auto smooth_step = [&]() {
    work = y - b2;
    smooth_dict.apply_transpose(cspan(work), mspan(coeffs));
    threshold_groups(part1, coeffs, lambda1, next, buffer);
    smooth_dict.apply(cspan(next), mspan(next_image));
    delta_c = next - b1;
    smooth_dict.apply(cspan(delta_c), mspan(delta_r));
    return change_of(b1, next, delta_r, part1, lambda1);
  };
  auto anomaly_step = [&]() {
    work = y - smooth_image;
    threshold_groups(part2, work, lambda2, next, buffer);
    delta_r = next - b2;
    return change_of(b2, next, delta_r, part2, lambda2);
  };

  const std::vector<double> lambdas1(part1.num_groups(), lambda1);
  const std::vector<double> lambdas2(part2.num_groups(), lambda2);
  // Residual of the stacked problem: correlations X1^T r and r for r = y - X1 b1 - b2.
  auto stacked_kkt = [&]() {
    work = y - smooth_image - b2;
    smooth_dict.apply_transpose(cspan(work), mspan(coeffs));
    const double r1 = kkt_from_correlation(part1, b1, coeffs, lambdas1, 1.0).residual;
    const double r2 = kkt_from_correlation(part2, b2, work, lambdas2, 1.0).residual;
    return std::max(r1, r2);
  };

  SolverResult result;
  double current = objective_of(smooth_image, b1, b2);
  bool converged = false;
  bool stalled = false;
  double kkt_residual = 0.0;
  Index sweep = 0;
  for (sweep = 1; sweep <= options.max_iterations; ++sweep) {
    const double start = current;
    for (int half = 0; half < 2; ++half) {
      const bool do_smooth = (half == 0) != options.anomaly_first;
      const double change = do_smooth ? smooth_step() : anomaly_step();
      // Exact block minimization cannot increase the objective; a positive
      // change is rounding at a fixed point, so the step is rejected.
      if (change <= 0.0) {
        if (do_smooth) {
          b1.swap(next);
          smooth_image.swap(next_image);
        } else {
          b2.swap(next);
        }
        current += change;
      } else {
        stalled = true;
      }
      result.objective_trace.push_back(current);
    }

    const double progress = start - current;
    if (progress <= options.objective_rel_tolerance * std::abs(start) || stalled) {
      kkt_residual = stacked_kkt();
      if (kkt_residual <= options.kkt_tolerance) {
        converged = true;
        break;
      }
      if (stalled) break;
    }
  }

  if (!converged && sweep > options.max_iterations) kkt_residual = stacked_kkt();

  DemixResult out;
  Vector stacked(2 * n);
  stacked.head(n) = b1;
  stacked.tail(n) = b2;
  const BlockDictionary full = concat_blocks(smooth_dict, anomaly_dict);
  result.iterations = std::min(sweep, options.max_iterations);
  result.final_objective = objective_of(smooth_image, b1, b2);
  result.kkt_residual = kkt_residual;
  result.converged = converged;
  result.estimate = GroupSparseSignal::from_coefficients(std::move(stacked), full.partition());
  out.smooth = std::move(b1);
  out.anomaly = std::move(b2);
  out.result = std::move(result);
  return out;
}

}  // namespace glasso
