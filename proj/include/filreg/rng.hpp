#pragma once

#include <cstdint>

#include "filreg/types.hpp"

namespace filreg {

/// Counter-based random stream. A stream is keyed by (seed, a, b); draws from
/// one stream never depend on what other streams consumed, so sampling is
/// reproducible under any evaluation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t a = 0, std::uint64_t b = 0) {
    state_ = mix(0x243f6a8885a308d3ull ^ seed, seed);
    state_ = mix(state_, a);
    state_ = mix(state_, b);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform in (-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform in lo + (hi-lo)*[0,1).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform in the open Euclidean ball of given center and radius.
  Vec next_in_ball(const Vec& center, double radius) {
    const int d = static_cast<int>(center.size());
    Vec y(d);
    while (true) {
      for (int i = 0; i < d; ++i) y[i] = next_symmetric();
      if (y.squaredNorm() < 1.0) break;
    }
    return center + radius * y;
  }

  /// Uniform in a box.
  Vec next_in_box(const Box& box) {
    Vec y(box.dim());
    for (int a = 0; a < box.dim(); ++a) y[a] = next_in(box.lo[a], box.hi[a]);
    return y;
  }

 private:
  static std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
  }

  std::uint64_t state_;
};

}  // namespace filreg
