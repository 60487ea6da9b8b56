#pragma once

#include <cstdint>

namespace stamstar {

// Counter-mode splitmix64. Output i depends only on (seed, i), so traces
// replay exactly on any platform. Identifier "splitmix64-ctr" in trace
// headers refers to this implementation.
struct Rng {
  uint64_t seed = 0;
  uint64_t counter = 0;

  explicit Rng(uint64_t s = 0) : seed(s) {}

  uint64_t next() {
    uint64_t z = seed + (++counter) * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, n). Rejection sampling keeps the distribution exact.
  uint64_t bounded(uint64_t n) {
    if (n <= 1) return 0;
    uint64_t limit = ~0ull - (~0ull % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }
};

}  // namespace stamstar
