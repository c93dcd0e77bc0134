#include <Eigen/QR>
#include <cmath>
#include <string>

#include "glasso/error.hpp"
#include "glasso/kernels.hpp"
#include "glasso/solver.hpp"

namespace glasso {
namespace {

double block_norm(const Vector& v, const IndexList& cols) {
  double ss = 0.0;
  for (Index j : cols) ss += v(j) * v(j);
  return std::sqrt(ss);
}

void check_shapes(const GroupPartition& partition, const Vector& beta,
                  std::span<const double> lambdas) {
  require(static_cast<Index>(beta.size()) == partition.num_columns(),
          ErrorCode::dimension_mismatch, "beta length does not match the partition");
  require(lambdas.size() == partition.num_groups(), ErrorCode::dimension_mismatch,
          "need one lambda per group");
}

}  // namespace

double objective_from_residual(const GroupPartition& partition, const Vector& residual,
                               const Vector& beta, std::span<const double> lambdas) {
  check_shapes(partition, beta, lambdas);
  double penalty = 0.0;
  for (Index g = 0; g < partition.num_groups(); ++g)
    penalty += lambdas[g] * block_norm(beta, partition.group(g));
  const double rss = kernels::sumsq(std::span<const double>(residual.data(), residual.size()));
  return 0.5 * rss + penalty;
}

double objective(const BlockDictionary& x, const Vector& y, const Vector& beta,
                 std::span<const double> lambdas) {
  require(static_cast<Index>(y.size()) == x.rows(), ErrorCode::dimension_mismatch,
          "observation length does not match the dictionary");
  require(static_cast<Index>(beta.size()) == x.cols(), ErrorCode::dimension_mismatch,
          "beta length does not match the dictionary");
  const Vector r = y - x.apply(beta);
  return objective_from_residual(x.partition(), r, beta, lambdas);
}

KktReport kkt_from_correlation(const GroupPartition& partition, const Vector& beta,
                               const Vector& correlation, std::span<const double> lambdas,
                               double tolerance) {
  check_shapes(partition, beta, lambdas);
  const Index G = partition.num_groups();
  KktReport report;
  report.dual_slack.resize(G);
  report.group_residual.resize(G);
  report.residual = 0.0;
  for (Index g = 0; g < G; ++g) {
    const IndexList& cols = partition.group(g);
    const double bn = block_norm(beta, cols);
    const double cn = block_norm(correlation, cols);
    report.dual_slack[g] = cn / lambdas[g];
    double res = 0.0;
    if (bn < kZeroGroupNorm) {
      res = std::max(0.0, report.dual_slack[g] - 1.0);
    } else {
      // -c_g + lambda_g beta_g / ||beta_g||
      double ss = 0.0;
      for (Index j : cols) {
        const double e = -correlation(j) + lambdas[g] * beta(j) / bn;
        ss += e * e;
      }
      res = std::sqrt(ss);
    }
    report.group_residual[g] = res;
    if (g == 0 || res > report.residual) {
      report.residual = res;
      report.worst_group = g;
    }
  }
  report.satisfied = report.residual <= tolerance;
  return report;
}

KktReport kkt_check(const BlockDictionary& x, const Vector& y, const Vector& beta,
                    std::span<const double> lambdas, double tolerance, bool check_rank) {
  require(static_cast<Index>(y.size()) == x.rows(), ErrorCode::dimension_mismatch,
          "observation length does not match the dictionary");
  require(static_cast<Index>(beta.size()) == x.cols(), ErrorCode::dimension_mismatch,
          "beta length does not match the dictionary");
  const Vector r = y - x.apply(beta);
  const Vector c = x.apply_transpose(r);
  KktReport report = kkt_from_correlation(x.partition(), beta, c, lambdas, tolerance);

  if (check_rank) {
    IndexList support;
    for (Index j = 0; j < x.cols(); ++j)
      if (beta(j) != 0.0) support.push_back(j);
    report.support_columns = support.size();
    if (support.empty()) {
      report.support_rank = 0;
      report.support_full_rank = true;
    } else {
      const Matrix xs = x.columns(support);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
      report.support_rank = static_cast<Index>(qr.rank());
      report.support_full_rank = report.support_rank == support.size();
    }
  }
  return report;
}

}  // namespace glasso
