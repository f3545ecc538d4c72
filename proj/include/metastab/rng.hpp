#pragma once

#include <cstdint>
#include <random>

#include "metastab/linalg.hpp"

namespace metastab {

/// Deterministic cross-platform randomness: std::mt19937_64 (output sequence
/// pinned by the standard) with hand-rolled value helpers, because the
/// standard <random> distributions are not bit-identical across platforms.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return eng_(); }

  /// Independent substream; mixes the stream index through splitmix64 so
  /// nearby indices give unrelated states.
  SeededRng fork(std::uint64_t stream) const {
    std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return SeededRng(z ^ (z >> 31));
  }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform in {0, ..., n-1}; n >= 1. Modulo bias is irrelevant here (test
  /// data generation), determinism is not.
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  Vec vector(std::size_t dim, double lo, double hi) {
    Vec v(dim);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace metastab
