#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "encnet/types.hpp"

namespace encnet {

/// splitmix64 mix; used to derive independent sub-seeds from one run seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seedable generator with platform-independent output. The engine is
/// mt19937_64 (bit-exact by the standard); floating draws avoid
/// std::*_distribution, whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1].
  double next_open01() { return 1.0 - next_double(); }

  /// Pareto tail sample: P(X >= x) = (x / xmin)^(-ccdf_exponent), x >= xmin.
  double pareto(double ccdf_exponent, double xmin) {
    return xmin * std::pow(next_open01(), -1.0 / ccdf_exponent);
  }

  /// Unbiased uniform integer in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw argument_error("Rng::below: n must be positive");
    const std::uint64_t rem = std::uint64_t(-n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = eng_();
      if (x >= rem) return x % n;
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace encnet
