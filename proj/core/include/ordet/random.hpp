#pragma once

#include <cstdint>
#include <limits>

namespace ordet {

/// SplitMix64 generator. Its state is a single word, so a fresh stream per
/// Monte Carlo trial costs nothing to seed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

using Rng = SplitMix64;

/// Independent stream for (seed, a, b), e.g. (seed, hypothesis, trial index).
/// The derivation depends only on its arguments, never on scheduling.
constexpr Rng make_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
  std::uint64_t h = SplitMix64::mix(seed ^ 0x6A09E667F3BCC908ULL);
  h = SplitMix64::mix(h ^ (a + 0xBB67AE8584CAA73BULL));
  h = SplitMix64::mix(h ^ (b + 0x3C6EF372FE94F82BULL));
  return Rng(h);
}

/// Uniform draw on the open interval (0, 1) with 53 random bits.
inline double uniform_open01(Rng& rng) noexcept {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace ordet
