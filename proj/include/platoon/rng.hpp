#pragma once

#include <cstdint>

namespace platoon {

// xorshift64* pseudo-random generator (Marsaglia's 64-bit shift-register
// xorshift followed by a multiplicative output scramble, Vigna's variant).
// The algorithm is fixed here so that a seed reproduces the same stream on
// every platform, independent of the host library's std::mt19937 etc.
//
//   state ^= state >> 12; state ^= state << 25; state ^= state >> 27;
//   output = state * 0x2545F4914F6CDD1D
//
// A zero seed is remapped to a fixed odd constant (the state must never be 0).
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed)
      : state_(seed != 0 ? seed : 0x9E3779B97F4A7C15ULL) {}

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform double in [-spread, spread). Exact zero when spread == 0.
  double symmetric(double spread) { return spread * (2.0 * uniform() - 1.0); }

 private:
  std::uint64_t state_;
};

}  // namespace platoon
