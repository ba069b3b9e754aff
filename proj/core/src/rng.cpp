#include "graphlim/rng.hpp"

namespace graphlim {

namespace {

constexpr std::uint64_t splitmix(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t CounterRng::mix(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter) noexcept {
  return splitmix(splitmix(splitmix(seed) ^ stream) + counter);
}

double CounterRng::uniform() noexcept { return to_unit((*this)()); }

__extension__ typedef unsigned __int128 u128;

std::uint64_t CounterRng::below(std::uint64_t bound) noexcept {
  // Lemire's rejection method.
  u128 product = static_cast<u128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<u128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double CounterRng::uniform_at(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return to_unit(mix(seed, a, b));
}

}  // namespace graphlim
