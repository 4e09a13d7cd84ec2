#pragma once

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "numrad/matrix.hpp"
#include "numrad/rng.hpp"

namespace numrad::testing {

inline ComplexMatrix nilpotent_two() { return {{0.0, 2.0}, {0.0, 0.0}}; }

inline ComplexMatrix nonspanning_disk() { return {{0.0, 0.0, 2.0}, {0.0, 0.8, 0.0}, {0.0, 0.0, 0.0}}; }

inline ComplexMatrix not_disk_3() { return {{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}; }

inline HermitianMatrix family_z(double s) { return HermitianMatrix::diagonal({-1.0, s, 1.0}); }

inline ComplexMatrix jordan(std::size_t n) {
  ComplexMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

inline ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return gaussian_matrix(n, rng);
}

inline HermitianMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  return HermitianMatrix::hermitian_part(random_matrix(n, seed));
}

/// Eigenvalues of a 2 x 2 Hermitian matrix from the quadratic formula.
inline std::pair<double, double> eig2(const HermitianMatrix& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const double b = std::abs(h(1, 0));
  const double mid = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), b);
  return {mid + rad, mid - rad};
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

}  // namespace numrad::testing
