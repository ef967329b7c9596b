#pragma once
// Seeded random draws used by the sampling helpers. The engine is
// std::mt19937_64 (sequence pinned by the standard); the mapping to doubles
// is done here rather than with std::uniform_real_distribution so that
// outputs are identical across standard library implementations.

#include <cstdint>
#include <random>

#include "threshsim/system.hpp"

namespace threshsim {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  State state_in(const Box& box) {
    const double a = uniform(box.a_lo, box.a_hi);
    const double c = uniform(box.c_lo, box.c_hi);
    return State{a, c};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace threshsim
