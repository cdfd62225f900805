#pragma once

// SplitMix64 (Steele, Lea, Flood 2014). Its output sequence is fully
// specified, so seeded runs reproduce bit-for-bit on every platform, unlike
// the standard distributions.

#include <cstdint>

#include "galforms/field_tower.hpp"

namespace galforms {

inline constexpr std::uint64_t kDefaultSeed = 1;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Independent stream number `stream` derived from `seed`.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mixer(seed ^ (stream * 0xD1B54A32D192ED03ULL));
    return SplitMix64(mixer());
  }

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
  }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = (*this)();
    while (x >= limit) x = (*this)();
    return x % bound;
  }

 private:
  std::uint64_t state_;
};

inline FieldElement random_element(const TowerField& f, SplitMix64& rng) {
  FieldElement x = f.zero();
  for (auto& c : x.coords) c = static_cast<KElem>(rng.below(f.base_order()));
  return x;
}

inline FieldElement random_nonzero_element(const TowerField& f, SplitMix64& rng) {
  FieldElement x = random_element(f, rng);
  while (f.is_zero(x)) x = random_element(f, rng);
  return x;
}

}  // namespace galforms
