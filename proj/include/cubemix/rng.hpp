#pragma once

#include <cstdint>
#include <random>

namespace cubemix {

// splitmix64 finalizer, used to derive engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic RNG with unbiased bounded draws. mt19937_64 output and the
// rejection sampling below are both fully specified, so identical (seed,
// stream) pairs reproduce identical draws on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  // Independent substream for trial `index` of a user-level seed.
  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix64(seed) ^ mix64(index + 0x51ed2701a9e3fc7bULL));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform draw in [0, bound) via Lemire's multiply-with-rejection.
  std::uint32_t below(std::uint32_t bound) {
    std::uint64_t x = next();
    __uint128_t m = __uint128_t(x) * bound;
    auto lo = std::uint64_t(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0 - std::uint64_t(bound)) % bound;
      while (lo < threshold) {
        x = next();
        m = __uint128_t(x) * bound;
        lo = std::uint64_t(m);
      }
    }
    return std::uint32_t(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cubemix
