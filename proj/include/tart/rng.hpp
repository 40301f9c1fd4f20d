#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace tart {

// Deterministic 64-bit generator (SplitMix64). Every randomized operation in
// the library draws from this so that results are reproducible across
// platforms and bindable from other languages. The update is
//   s += 0x9E3779B97F4A7C15
//   z = s; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
//   z = (z ^ z>>27) * 0x94D049BB133111EB
//   return z ^ z>>31
// Derived draws are pinned too: unit doubles take the top 53 bits, normals use
// Box-Muller (two draws each, second value discarded), bounded ints reduce
// modulo n.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Uniform integer in [lo, hi] inclusive.
  long long int_range(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  /// Standard normal via Box-Muller; consumes exactly two u64 draws.
  double normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Fisher-Yates shuffle, descending index order.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace tart
