#pragma once

// SplitMix64 (Steele, Lea and Flood): state += 0x9e3779b97f4a7c15 followed by
// the variant-13 finalizer. Sequences depend only on the seed, so every
// platform produces the same sets and trials.

#include <cstdint>

namespace ffdist {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, bound) by rejection; bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Seed for a sub-stream labelled by (a, b); distinct labels give unrelated streams.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t h = SplitMix64::mix(seed + 0x9e3779b97f4a7c15ULL);
  h = SplitMix64::mix(h ^ (a + 0x632be59bd9b4e019ULL));
  return SplitMix64::mix(h ^ (b + 0x85157af5d3ae2a39ULL));
}

}  // namespace ffdist
