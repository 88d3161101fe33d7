#pragma once

// Small deterministic generators for the property tests.

#include <cstdint>

#include "cmnc/disc.hpp"

namespace testgen {

struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed) {}

  // splitmix64
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// A valid discriminant with 3 <= |Delta| <= max_abs.
inline std::int64_t random_disc(Rng& rng, std::int64_t max_abs) {
  for (;;) {
    const std::int64_t d = -rng.range(3, max_abs);
    if (cmnc::Discriminant::is_valid(d)) return d;
  }
}

}  // namespace testgen
