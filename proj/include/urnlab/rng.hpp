#pragma once

#include <cstdint>

namespace urnlab {

// SplitMix64 (Steele, Lea & Flood): the project-wide generator. Chosen for
// reproducibility: the sequence is fully determined by a 64-bit state and is
// identical on every platform. Batch runs get independent streams by seeding
// stream j with mix(seed, j) below.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from {0, ..., bound-1} by rejection.
  uint64_t next_below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Deterministic per-run stream derivation from (seed, run index).
  static SplitMix64 stream(uint64_t seed, uint64_t run_index) {
    SplitMix64 h(seed ^ (0xD1342543DE82EF95ull * (run_index + 1)));
    return SplitMix64(h.next());
  }

private:
  uint64_t state_;
};

}  // namespace urnlab
