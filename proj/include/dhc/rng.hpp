#pragma once

#include <cstdint>

namespace dhc {

// splitmix64. Chosen over <random> engines because the draw sequence must be
// identical across platforms and standard library versions, including the
// uint64 -> double mapping.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53 bits of mantissa.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform index in [0, n). n must be > 0.
  size_t next_below(size_t n) { return static_cast<size_t>(next_u64() % n); }

 private:
  uint64_t state_;
};

}  // namespace dhc
