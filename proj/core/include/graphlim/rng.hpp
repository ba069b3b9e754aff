#pragma once

#include <cstdint>
#include <limits>

namespace graphlim {

/// Counter-based generator: output i is a bijective mix of (seed, stream, i).
/// Any draw can be replayed from its coordinates, which is what makes
/// prefix sampling stable under extension.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : seed_(seed), stream_(stream) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return mix(seed_, stream_, counter_++); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, bound), unbiased (bound > 0).
  std::uint64_t below(std::uint64_t bound) noexcept;

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Independent child generator; children of distinct keys never collide.
  CounterRng split(std::uint64_t key) const noexcept {
    return CounterRng(mix(seed_, stream_ ^ 0x9e3779b97f4a7c15ULL, key), stream_ + 1);
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) noexcept;

  /// Stateless uniform in [0, 1) keyed by coordinates.
  static double uniform_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace graphlim
