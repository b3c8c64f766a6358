#pragma once

// Bit-mask helpers for the exhaustive searches. Only used for spaces with at
// most 64 points.

#include <bit>
#include <cstdint>
#include <vector>

#include "mmspace/space.h"

namespace mmspace::detail {

using Mask = uint64_t;

inline Mask bit(int i) { return Mask{1} << i; }

inline Mask full_mask(int n) { return n >= 64 ? ~Mask{0} : bit(n) - 1; }

// Sums weights in increasing index order so that equal masks always give
// bit-identical measures.
inline double mask_measure(std::span<const double> weights, Mask m) {
  double total = 0.0;
  while (m) {
    const int i = std::countr_zero(m);
    total += weights[i];
    m &= m - 1;
  }
  return total;
}

inline double mask_measure(const Space& space, Mask m) {
  return mask_measure(space.weights(), m);
}

// ball[x] = {y : d(x, y) <= r} (closed) or {y : d(x, y) < r} (open).
inline std::vector<Mask> ball_masks(const Space& space, double r,
                                    Closure closure) {
  const int n = space.size();
  std::vector<Mask> balls(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const double d = space.dist(x, y);
      if (closure == Closure::kClosed ? d <= r : d < r) balls[x] |= bit(y);
    }
  }
  return balls;
}

inline Mask neighborhood_mask(const std::vector<Mask>& balls, Mask a) {
  Mask out = 0;
  while (a) {
    out |= balls[std::countr_zero(a)];
    a &= a - 1;
  }
  return out;
}

}  // namespace mmspace::detail
