#include "numrad/rng.hpp"

#include <cmath>
#include <numbers>

#include "numrad/linalg.hpp"

namespace numrad {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_ = radius * std::sin(angle);
  has_cached_ = true;
  return radius * std::cos(angle);
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 mix(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  mix.next();
  return mix.next();
}

ComplexMatrix gaussian_matrix(std::size_t n, SplitMix64& rng) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = rng.normal();
      const double im = rng.normal();
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng) {
  ComplexMatrix g = gaussian_matrix(n, rng);
  ComplexMatrix q(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<Complex> v = g.column(c);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < c; ++k) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(q(r, k)) * v[r];
        for (std::size_t r = 0; r < n; ++r) v[r] -= dot * q(r, k);
      }
    }
    const double nv = norm2(v);
    for (auto& z : v) z /= nv;
    q.set_column(c, v);
  }
  return q;
}

}  // namespace numrad
