#pragma once

// Small deterministic RNG used everywhere randomness appears. splitmix64 is
// platform-independent (unlike the standard distributions), and streams can
// be derived from (seed, index) pairs so retries and parallel tasks stay
// reproducible without sharing state.

#include <cstdint>

namespace trif {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream #index of a base seed (retry attempts, worker tasks).
  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    Rng r(seed);
    std::uint64_t salt = r.next();
    return Rng(salt ^ mix(index + 0x9e3779b97f4a7c15ull));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform in [0, bound) via rejection, exact for every bound.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      std::uint64_t v = next();
      if (v >= threshold) return v % bound;
    }
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace trif
