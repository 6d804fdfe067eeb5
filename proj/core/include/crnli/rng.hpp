#pragma once

#include <cstdint>

namespace crnli {

/// splitmix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-based stream over splitmix64: draws depend only on (seed, index,
/// counter), so independent streams can be evaluated in any order or in
/// parallel with identical results.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : base_(splitmix64(seed ^ (0xA0761D6478BD642Full * (stream + 1)))) {}

  std::uint64_t next_u64() { return splitmix64(base_ + counter_++); }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

inline const char* counter_rng_name() { return "splitmix64-counter"; }

}  // namespace crnli
