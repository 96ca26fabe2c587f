#include "tsclust/random.hpp"

#include <limits>
#include <vector>

#include "tsclust/error.hpp"

namespace tsclust {

namespace {

std::mt19937_64 seeded_engine(std::initializer_list<std::uint64_t> words) {
  std::vector<std::uint32_t> parts;
  for (auto w : words) {
    parts.push_back(static_cast<std::uint32_t>(w & 0xffffffffu));
    parts.push_back(static_cast<std::uint32_t>(w >> 32));
  }
  std::seed_seq seq(parts.begin(), parts.end());
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine({seed})) {}

Rng::Rng(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
    : engine_(seeded_engine({seed, a, b, 0x7473636c75737472ull})) {}

std::size_t Rng::index(std::size_t n) {
  require(n > 0, ErrorCode::InvalidArgument, "Rng::index: empty range");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<std::size_t>(x % n);
}

std::size_t Rng::categorical(std::span<const double> weights) {
  require(!weights.empty(), ErrorCode::InvalidArgument, "categorical: no weights");
  double total = 0.0;
  for (double w : weights) total += w;
  require(total > 0.0, ErrorCode::InvalidArgument, "categorical: zero total weight");
  const double u = uniform() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  Rng rng(seed, a, b);
  return rng.next_u64();
}

}  // namespace tsclust
