#pragma once

#include <cstdint>
#include <random>

namespace mmspace {

// Seeded generator whose output is identical on every platform.
// std::mt19937_64's sequence is fixed by the standard; the standard
// distributions are not, so the conversions below are done by hand.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound - 1}; bound must be positive.
  uint64_t below(uint64_t bound) { return next() % bound; }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mmspace
