#pragma once

#include <cstdint>
#include <random>

namespace nppe {

/// Portable seeded generator: std::mt19937_64 (whose output sequence is fixed by the
/// standard) with explicit conversions, so draws match on every platform.
///  - uniform(): top 53 bits scaled by 2^-53, in [0, 1)
///  - below(n): rejection sampling on the raw 64-bit stream, unbiased in [0, n)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nppe
