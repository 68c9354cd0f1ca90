#pragma once

// Deterministic seeded RNG (splitmix64).  Used by the randomized checks so
// that identical seeds reproduce identical runs on every platform; std::
// distributions are avoided because their outputs are not standardized.

#include <cstdint>

#include "rational.hpp"

namespace qglue {

struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi] (inclusive); hi >= lo.
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Small nonzero rational with numerator in [-bound, bound] and
  // denominator in [1, dbound].
  Rat small_rat(long bound = 3, long dbound = 3) {
    long num = 0;
    while (num == 0) num = range(-bound, bound);
    return Rat(num, range(1, dbound));
  }
};

}  // namespace qglue
