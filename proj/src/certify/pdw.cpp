#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <string>

#include "glasso/certify.hpp"
#include "glasso/error.hpp"

namespace glasso {
namespace {

double block_norm(const Vector& v, std::span<const Index> idx) {
  double ss = 0.0;
  for (Index j : idx) ss += v(j) * v(j);
  return std::sqrt(ss);
}

}  // namespace

double default_c4() { return 1.0 / (8.0 * std::sqrt(2.0 * (1.0 + 4.0 * std::log(2.0)))); }

RestrictedSolution solve_restricted(const SyntheticInstance& instance,
                                    std::span<const double> lambdas,
                                    const SolverOptions& options) {
  const BlockDictionary& x = instance.dictionary;
  const GroupPartition& partition = x.partition();
  require(lambdas.size() == partition.num_groups(), ErrorCode::dimension_mismatch,
          "need one lambda per group");

  RestrictedSolution out;
  out.support = instance.truth.support;
  out.columns = partition.columns_of(out.support);
  if (out.support.empty()) {
    out.result.converged = true;
    return out;
  }

  const Matrix xs = x.columns(out.columns);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xs);
  require(static_cast<Index>(qr.rank()) == out.columns.size(), ErrorCode::rank_deficient,
          "X restricted to the true support has rank " + std::to_string(qr.rank()) + " < " +
              std::to_string(out.columns.size()));

  // Local partition: support group k owns the positions of its columns in S*.
  std::vector<IndexList> local(out.support.size());
  std::vector<double> local_lambdas(out.support.size());
  for (Index k = 0; k < out.support.size(); ++k) {
    for (Index j : partition.group(out.support[k])) {
      const auto pos = std::lower_bound(out.columns.begin(), out.columns.end(), j);
      local[k].push_back(static_cast<Index>(pos - out.columns.begin()));
    }
    std::sort(local[k].begin(), local[k].end());
    local_lambdas[k] = lambdas[out.support[k]];
  }
  const BlockDictionary restricted = BlockDictionary::from_dense_unchecked(
      xs, GroupPartition::from_sets(std::move(local), out.columns.size()));

  SolverOptions tight = options;
  const double lmin = *std::min_element(local_lambdas.begin(), local_lambdas.end());
  tight.kkt_tolerance = std::min(options.kkt_tolerance, 1e-9 * lmin);
  tight.max_iterations = std::max<Index>(options.max_iterations, 20000);
  out.result = solve_group_lasso(restricted, instance.observations, local_lambdas, tight);
  out.beta = out.result.estimate.coefficients;
  return out;
}

PDWCertificate construct_pdw(const SyntheticInstance& instance, std::span<const double> lambdas,
                             const SolverOptions& options) {
  const BlockDictionary& x = instance.dictionary;
  const GroupPartition& partition = x.partition();
  const Index p = x.cols();

  PDWCertificate cert;
  cert.restricted = solve_restricted(instance, lambdas, options);
  cert.support_rank_ok = true;
  const RestrictedSolution& rs = cert.restricted;

  Vector check_beta = Vector::Zero(p);
  for (Index k = 0; k < rs.columns.size(); ++k) check_beta(rs.columns[k]) = rs.beta(k);

  // On support: X_S^T (y - X_S check beta) / lambda_g.
  const Vector residual = instance.observations - x.apply(check_beta);
  const Vector corr_on = x.apply_transpose(residual);
  // Off support: X_g^T [X_S (beta*_S - check beta_S) + w] / lambda_g.
  const Vector off_vec = x.apply(Vector(instance.truth.coefficients - check_beta)) + instance.noise;
  const Vector corr_off = x.apply_transpose(off_vec);

  cert.dual = Vector::Zero(p);
  std::vector<bool> on_support(partition.num_groups(), false);
  for (Index g : rs.support) on_support[g] = true;

  cert.restricted_nonvanishing = true;
  for (Index g = 0; g < partition.num_groups(); ++g) {
    const IndexList& cols = partition.group(g);
    const Vector& corr = on_support[g] ? corr_on : corr_off;
    for (Index j : cols) cert.dual(j) = corr(j) / lambdas[g];
    const double zn = block_norm(cert.dual, cols);
    if (on_support[g]) {
      GroupPerturbation gp;
      gp.group = g;
      gp.truth_norm = block_norm(instance.truth.coefficients, cols);
      gp.restricted_norm = block_norm(check_beta, cols);
      gp.dual_norm = zn;
      double hh = 0.0, uu = 0.0;
      for (Index j : cols) {
        const double h = check_beta(j) - instance.truth.coefficients(j);
        const double u = cert.dual(j) - instance.truth.coefficients(j) / gp.truth_norm;
        hh += h * h;
        uu += u * u;
      }
      gp.h_norm = std::sqrt(hh);
      gp.u_norm = std::sqrt(uu);
      if (gp.restricted_norm == 0.0) cert.restricted_nonvanishing = false;
      cert.perturbations.push_back(gp);
    } else {
      cert.off_support.push_back(g);
      cert.off_support_norms.push_back(zn);
      if (cert.off_support.size() == 1 || zn > cert.max_off_support_norm) {
        cert.max_off_support_norm = zn;
        cert.worst_off_support_group = g;
      }
    }
  }
  cert.strictly_feasible = cert.max_off_support_norm < 1.0;
  return cert;
}

}  // namespace glasso
