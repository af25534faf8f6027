#pragma once

#include <cstdint>

namespace arclab {

// Counter-based generator: draw i of stream s is a pure function of
// (seed, s, i), so any consumer can index into its stream without shared
// state and results are bit-stable however the work is partitioned.
// The mixer is the splitmix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ (0x2545F4914F6CDD1Dull * (stream + 1)))) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(base_ ^ mix(counter));
  }

  // uniform in [0,1), top 53 bits
  double uniform01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t base_;
};

// Halton radical-inverse sequence, the low-discrepancy source for the
// volume estimates. Index 0 maps to 0; callers usually skip a small prefix.
inline double halton(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0;
  while (index > 0) {
    f /= static_cast<double>(base);
    result += f * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

}  // namespace arclab
