#pragma once

// SplitMix64 stream and the derived samplers every generator in the library
// draws from. All outputs are fixed functions of the seed.
//
//   mix64(z):   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//               return z ^ (z >> 31)
//   next():     state += 0x9E3779B97F4A7C15; return mix64(state)
//   uniform():  (next() >> 11) * 2^-53                 in [0, 1)
//   gaussian(): Box-Muller on u1 = ((next() >> 11) + 1) * 2^-53 (in (0, 1]),
//               u2 = uniform(); r = sqrt(-2 ln u1); emits r cos(2 pi u2),
//               then r sin(2 pi u2) on the following call.

#include <cstdint>

namespace glasso {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixA = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMixB = 0x94D049BB133111EBULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * kMixA;
  z = (z ^ (z >> 27)) * kMixB;
  return z ^ (z >> 31);
}

/// First output of a SplitMix64 stream seeded with x.
constexpr std::uint64_t splitmix_finalize(std::uint64_t x) { return mix64(x + kGolden); }

/// Independent child seed for a named purpose.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix_finalize(base ^ splitmix_finalize(tag));
}

namespace seed_tag {
inline constexpr std::uint64_t support = 1;
inline constexpr std::uint64_t signal = 2;
inline constexpr std::uint64_t noise = 3;
}  // namespace seed_tag

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t uniform_int(std::uint64_t bound);

  double gaussian();

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace glasso
