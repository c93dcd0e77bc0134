#include "glasso/experiments.hpp"
#include "glasso/rng.hpp"

namespace glasso {

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t s_index,
                         std::uint64_t alpha_index, std::uint64_t trial_index) {
  const std::uint64_t mixed = s_index * kGolden + alpha_index * kMixA + trial_index * kMixB;
  return splitmix_finalize(base_seed ^ mixed);
}

}  // namespace glasso
