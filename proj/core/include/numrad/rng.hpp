#pragma once

#include <cstdint>

#include "numrad/matrix.hpp"

namespace numrad {

/// SplitMix64 (Steele, Lea, Flood): a counter-based generator with fixed
/// published constants, so streams are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1), 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// Seed of substream `stream` of a master seed.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

/// n x n matrix with independent standard normal real and imaginary parts.
ComplexMatrix gaussian_matrix(std::size_t n, SplitMix64& rng);

/// Haar-like random unitary (Gram-Schmidt on a Gaussian matrix).
ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng);

}  // namespace numrad
