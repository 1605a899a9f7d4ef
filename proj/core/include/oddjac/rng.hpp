// Counter-based pseudo-random values for reproducible sampling.
//
// Every drawn value is a pure function of (seed, lane indices), so estimators
// are replayable and individual sample streams can be extended lazily without
// disturbing one another.
#pragma once

#include <cstdint>

namespace oddjac::rng {

// SplitMix64 finalizer; full-period bijective mixing of a 64-bit word.
inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One 64-bit word from the (seed; a, b, c) counter lane.
inline std::uint64_t word(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0) {
  std::uint64_t h = mix(seed ^ 0x243f6a8885a308d3ULL);
  h = mix(h ^ a);
  h = mix(h ^ b);
  h = mix(h ^ c);
  return h;
}

// Uniform value in [0, bound) by rejection; walks the block counter, which the
// caller owns so that consecutive draws use fresh blocks.
inline std::uint64_t uniform_below(std::uint64_t bound, std::uint64_t seed, std::uint64_t a,
                                   std::uint64_t b, std::uint64_t& block) {
  const std::uint64_t limit = bound * (~0ULL / bound);  // multiple of bound
  for (;;) {
    std::uint64_t v = word(seed, a, b, block++);
    if (v < limit) return v % bound;
  }
}

}  // namespace oddjac::rng
