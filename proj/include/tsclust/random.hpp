#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace tsclust {

// Thin wrapper over std::mt19937_64. Uniform doubles are built from the top 53
// bits of each draw so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  // Independent stream for (seed, a, b): trial and rung indices in the harness.
  Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

  std::uint64_t next_u64() { return engine_(); }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::size_t index(std::size_t n);
  // Index drawn with probability proportional to weights.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tsclust
