#include <algorithm>
#include <cmath>
#include <limits>

#include "glasso/certify.hpp"
#include "glasso/coherence.hpp"
#include "glasso/error.hpp"

namespace glasso {
namespace {

ConditionRecord le(std::string name, double lhs, double rhs, std::string formula) {
  ConditionRecord r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.satisfied = lhs <= rhs;
  r.formula = std::move(formula);
  return r;
}

ConditionRecord ge(std::string name, double lhs, double rhs, std::string formula) {
  ConditionRecord r = le(std::move(name), lhs, rhs, std::move(formula));
  r.satisfied = lhs >= rhs;
  return r;
}

void finish(ConditionReport& report) {
  report.overall = std::all_of(report.conditions.begin(), report.conditions.end(),
                               [](const ConditionRecord& r) { return r.satisfied; });
}

}  // namespace

const ConditionRecord& ConditionReport::find(const std::string& name) const {
  for (const ConditionRecord& r : conditions)
    if (r.name == name) return r;
  fail(ErrorCode::invalid_argument, "no condition named " + name);
}

double theorem1_c2(double c0, double c1) {
  const double inner = 0.25 - 3.0 * c0 - 48.0 * c1;
  require(inner >= 0.0, ErrorCode::invalid_argument, "c0 and c1 must satisfy 48 c1 + 3 c0 <= 1/4");
  const double root = std::sqrt(9.0 + 0.5 * inner) - 3.0;
  return root * root;
}

ConditionReport check_theorem1(const BlockDictionary& x, std::span<const Index> support,
                               std::span<const double> truth_norms, double sigma,
                               const Theorem1Options& options) {
  require(truth_norms.size() == support.size(), ErrorCode::dimension_mismatch,
          "need one truth norm per support group");
  require(sigma >= 0.0, ErrorCode::invalid_argument, "sigma must be nonnegative");
  const GroupPartition& part = x.partition();
  // mu_B is undefined for a single group; that case has no cross terms.
  CoherenceReport coh;
  if (part.num_groups() >= 2) {
    coh = coherence_report(x);
  } else {
    coh.mu_I = intra_block_coherence(x).mu_I;
    coh.spectral_norm = spectral_norm(x).value;
  }
  const double p = static_cast<double>(x.cols());
  const double G = static_cast<double>(part.num_groups());
  const double logp = std::log(p);
  const double dmin = static_cast<double>(part.d_min());
  const double dmax = static_cast<double>(part.d_max());
  const double s = static_cast<double>(support.size());
  double dstar = 0.0;
  for (Index g : support) dstar += static_cast<double>(part.group_size(g));

  ConditionReport report;
  ConditionConstants& k = report.constants;
  k.c0 = options.c0;
  k.c1 = options.c1;
  k.c2 = theorem1_c2(k.c0, k.c1);
  k.c2_prime = std::min(k.c2, 1e-4);
  k.c4 = default_c4();
  k.epsilon_lower_bound =
      theorem1_epsilon(coh.mu_I, x.cols(), part.num_groups(), part.d_min());
  k.epsilon = std::max(k.epsilon_lower_bound, options.epsilon_override.value_or(0.0));
  // Implied weights scale with sqrt(d_g), so lambda_min / lambda_max = sqrt(d_min / d_max).
  k.gamma = std::sqrt(dmin / dmax) * k.c4 / std::sqrt(dmax * logp);

  const double inf = std::numeric_limits<double>::infinity();
  report.conditions.push_back(le("1a_intra_coherence", coh.mu_I, k.c0, "mu_I <= c0"));
  report.conditions.push_back(le("1b_inter_coherence", coh.mu_B,
                                 std::sqrt(dmin / (dmax * dmax)) * k.c1 / logp,
                                 "mu_B <= sqrt(d_min / d_max^2) c1 / log p"));
  const double frame_bound = k.c2 * G / (coh.spectral_norm * coh.spectral_norm * logp);
  const double coherence_bound =
      coh.mu_B > 0.0 ? (dmin / (dmax * dmax)) * k.c2_prime / (coh.mu_B * coh.mu_B * logp) : inf;
  report.conditions.push_back(
      le("2_sparsity", s, std::min(frame_bound, coherence_bound),
         "s <= min(c2 G / (||X||^2 log p), (d_min / d_max^2) c2' / (mu_B^2 log p))"));

  // Condition 3 is reported through its tightest group.
  const double boost = std::max(1.0, std::sqrt(s / (dmax * logp)));
  double worst_ratio = inf, worst_lhs = 0.0, worst_rhs = 0.0;
  for (Index k3 = 0; k3 < support.size(); ++k3) {
    const double dg = static_cast<double>(part.group_size(support[k3]));
    const double threshold =
        10.0 * sigma * (1.0 + k.epsilon) * (std::sqrt(dstar) + std::sqrt(dg)) * boost;
    const double ratio = threshold > 0.0 ? truth_norms[k3] / threshold : inf;
    if (ratio < worst_ratio) {
      worst_ratio = ratio;
      worst_lhs = truth_norms[k3];
      worst_rhs = threshold;
    }
  }
  report.conditions.push_back(ge("3_strength", worst_lhs, worst_rhs,
                                 "||beta*_g|| >= 10 sigma (1 + eps) (sqrt(d*) + sqrt(d_g)) "
                                 "max(1, sqrt(s / (d_max log p)))"));

  report.implied_lambdas.resize(part.num_groups());
  for (Index g = 0; g < part.num_groups(); ++g)
    report.implied_lambdas[g] =
        4.0 * sigma * (1.0 + k.epsilon) * std::sqrt(static_cast<double>(part.group_size(g)));
  // Condition 4 prescribes the weights; it holds for the implied schedule.
  ConditionRecord c4 = le("4_lambda", 4.0 * sigma * (1.0 + k.epsilon) * std::sqrt(dmax),
                          4.0 * sigma * (1.0 + k.epsilon) * std::sqrt(dmax),
                          "lambda_g = 4 sigma (1 + eps) sqrt(d_g)");
  report.conditions.push_back(c4);

  for (Index g : support)
    report.error_radii.push_back(5.0 * sigma * (1.0 + k.epsilon) *
                                 (std::sqrt(static_cast<double>(part.group_size(g))) +
                                  std::sqrt(dstar)));
  finish(report);
  return report;
}

ConditionReport check_corollary1(Index N, Index T, Index D, double sigma,
                                 std::span<const double> smooth_norms,
                                 std::span<const double> anomaly_norms,
                                 const Corollary1Options& options) {
  require(N >= 1 && T >= 1 && D >= 1, ErrorCode::invalid_argument, "N, T, D must be positive");
  require(sigma >= 0.0, ErrorCode::invalid_argument, "sigma must be nonnegative");
  const double n = static_cast<double>(N), t = static_cast<double>(T), d = static_cast<double>(D);
  const double s1 = static_cast<double>(smooth_norms.size());
  const double s2 = static_cast<double>(anomaly_norms.size());
  const double s = s1 + s2;
  const double log2nt = std::log(2.0 * n * t);

  ConditionReport report;
  ConditionConstants& k = report.constants;
  k.c1 = options.c1;
  k.c2 = options.c2;
  k.c2_prime = std::min(k.c2, 1e-4);
  k.c4 = default_c4();
  k.epsilon_lower_bound = demix_epsilon(N, T);
  k.epsilon = std::max(k.epsilon_lower_bound, options.epsilon_override.value_or(0.0));
  // lambda_min / lambda_max = 1 / sqrt(D); d_max = D T; p = 2 N T.
  k.gamma = (1.0 / std::sqrt(d)) * k.c4 / std::sqrt(d * t * log2nt);

  report.conditions.push_back(ge("1_dimension", std::sqrt(n),
                                 (2.0 * log2nt / k.c1) * std::sqrt(d * d * d * t),
                                 "sqrt(N) >= (2 log(2NT) / c1) sqrt(D^3 T)"));
  report.conditions.push_back(le("2_sparsity", s, k.c2 * n / (t * d * d * d * log2nt),
                                 "s <= c2 N / (T D^3 log(2NT))"));

  const double boost = std::max(1.0, std::sqrt(s / (t * d * log2nt)));
  const double spread = std::sqrt(s1 + s2 * d);
  const double thr1 = 10.0 * sigma * std::sqrt(t) * (1.0 + spread) * (1.0 + k.epsilon) * boost;
  const double thr2 =
      10.0 * sigma * std::sqrt(t) * (std::sqrt(d) + spread) * (1.0 + k.epsilon) * boost;
  const auto min_of = [](std::span<const double> v) {
    return v.empty() ? std::numeric_limits<double>::infinity() : *std::min_element(v.begin(), v.end());
  };
  report.conditions.push_back(ge("3_smooth_strength", min_of(smooth_norms), thr1,
                                 "||B1_g|| >= 10 sigma sqrt(T) (1 + sqrt(s1 + s2 D)) (1 + eps) "
                                 "max(1, sqrt(s / (T D log(2NT))))"));
  report.conditions.push_back(ge("4_anomaly_strength", min_of(anomaly_norms), thr2,
                                 "||B2_g|| >= 10 sigma sqrt(T) (sqrt(D) + sqrt(s1 + s2 D)) (1 + eps) "
                                 "max(1, sqrt(s / (T D log(2NT))))"));

  const double lambda1 = 4.0 * sigma * (1.0 + k.epsilon) * std::sqrt(t);
  // D = d^2, so sqrt(D) is an integer and the ratio below is exact.
  const double lambda2 = lambda1 * std::sqrt(d);
  report.implied_lambdas = {lambda1, lambda2};
  // Condition 5 fixes the two weights; recorded as their ratio, sqrt(D).
  ConditionRecord c5 = le("5_lambda_ratio", sigma > 0.0 ? lambda2 / lambda1 : std::sqrt(d),
                          std::sqrt(d), "lambda1 = 4 sigma (1+eps) sqrt(T), lambda2 = 4 sigma (1+eps) sqrt(D T)");
  report.conditions.push_back(c5);

  const double dstar = s1 * t + s2 * d * t;
  for (Index i = 0; i < smooth_norms.size(); ++i)
    report.error_radii.push_back(5.0 * sigma * (1.0 + k.epsilon) * (std::sqrt(t) + std::sqrt(dstar)));
  for (Index i = 0; i < anomaly_norms.size(); ++i)
    report.error_radii.push_back(5.0 * sigma * (1.0 + k.epsilon) *
                                 (std::sqrt(d * t) + std::sqrt(dstar)));
  finish(report);
  return report;
}

}  // namespace glasso
