#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace sdeslab {

// One deterministic 64-bit stream per randomized run. Engines draw every
// random quantity from the stream they are handed, so a seed pins the whole
// trajectory.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform in {0, ..., n-1}; n must be positive.
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint64_t span = n;
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() / span * span;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<std::uint32_t>(v % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sdeslab
