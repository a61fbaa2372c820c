#pragma once

#include <cstdint>

namespace dlplab {

// SplitMix64 (Steele/Lea/Vigna). The single deterministic generator used for
// every random choice in the project: irreducible search, multipliers, walk
// starts, instance secrets. Identical seeds reproduce identical runs on any
// platform. Trial fan-out derives per-trial generators as seed + index.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). Rejection sampling keeps the distribution exact.
  uint64_t below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      uint64_t v = next();
      if (v >= threshold) return v % n;
    }
  }

  // Uniform in [lo, hi] inclusive.
  uint64_t in_range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  uint64_t state_;
};

}  // namespace dlplab
