#include <algorithm>

#include "glasso/error.hpp"
#include "glasso/solver.hpp"

namespace glasso {

SupportMatch extract_group_support(const GroupSparseSignal& estimate,
                                   const GroupSparseSignal& truth, double epsilon_p) {
  require(estimate.partition == truth.partition, ErrorCode::dimension_mismatch,
          "estimate and truth use different partitions");
  require(epsilon_p > 0.0, ErrorCode::invalid_argument, "epsilon_p must be positive");
  const std::vector<double> truth_norms = truth.group_norms();
  const double max_truth =
      truth_norms.empty() ? 0.0 : *std::max_element(truth_norms.begin(), truth_norms.end());
  const double zero_threshold = max_truth > 0.0 ? epsilon_p * max_truth : epsilon_p;

  SupportMatch out;
  Index true_positive = 0;
  Index true_count = 0;
  for (Index g = 0; g < truth_norms.size(); ++g) {
    const bool is_true = truth_norms[g] > 0.0;
    const double threshold = is_true ? epsilon_p * truth_norms[g] : zero_threshold;
    const bool declared = estimate.group_norm(g) > threshold;
    if (declared) out.declared.push_back(g);
    if (is_true) ++true_count;
    if (is_true && declared) ++true_positive;
  }
  out.exact_match = out.declared == truth.support;
  out.precision = out.declared.empty()
                      ? 1.0
                      : static_cast<double>(true_positive) / static_cast<double>(out.declared.size());
  out.recall = true_count == 0 ? 1.0
                               : static_cast<double>(true_positive) / static_cast<double>(true_count);
  return out;
}

}  // namespace glasso
