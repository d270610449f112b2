#pragma once

#include <cstdint>

namespace cusp {

/// Deterministic splitmix64 stream. Used everywhere randomness is needed so
/// that a fixed seed gives byte-identical reports across runs and platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform value in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // rejection sampling keeps the draw unbiased
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % n;
  }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(int num, int den) { return below(static_cast<std::uint64_t>(den)) < static_cast<std::uint64_t>(num); }

  /// Independent child stream; distinct tags give distinct streams.
  Rng fork(std::uint64_t tag) {
    Rng r(state_ ^ (0xd1b54a32d192ed03ULL * (tag + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace cusp
