#pragma once

#include <optional>

#include "numrad/matrix.hpp"

namespace numrad {

struct Thresholds {
  double disk = 1e-7;  // absolute, on sigma_min of the normalized Delta
  double sep = 1e-6;
  double span = 1e-6;
};

/// Coefficients of a polynomial vector p(w) = sum_j p^j w^(j-1); column j of
/// `coeffs` is p^(j+1).
struct DiskCertificate {
  ComplexMatrix coeffs;
  double residual = 0.0;       // max over 64 angles of |(w'A + wA*)p(w) - 2p(w)|
  double spanning_cond = 0.0;  // sigma_min / sigma_max of coeffs
  double norm = 0.0;           // Frobenius norm of coeffs, 1 after normalization
  int null_dim = 0;            // dimension of the numerical null space it came from
  bool multiple() const noexcept { return null_dim > 1; }
};

/// The n(n+2) x n^2 block-banded matrix whose block column j holds A, -2I
/// and A* in block rows j, j+1 and j+2.
ComplexMatrix build_delta(const ComplexMatrix& a);

/// sigma_min(Delta(A / r)). Throws DegenerateInput when r <= 0.
double disk_defect(const ComplexMatrix& a, double r);

/// Null vector of Delta(A / r) reshaped into coefficients, when
/// sigma_min <= rtol * sigma_max. With a null space of dimension above one
/// the certificate of least degree is returned.
std::optional<DiskCertificate> extract_certificate(const ComplexMatrix& a, double r, double rtol = 1e-8);

/// sigma_min / sigma_max of the coefficient matrix. Throws InvalidFactor for
/// a zero coefficient matrix.
double spanning_measure(const DiskCertificate& cert);

struct CertificationReport {
  bool strongly_certified = false;
  double disk_defect = 0.0;
  double separation = 0.0;
  double spanning = 0.0;  // 0 when no certificate was extracted
  std::optional<DiskCertificate> certificate;
};

CertificationReport is_strongly_certified(const ComplexMatrix& a, double r, const Thresholds& t = {});

}  // namespace numrad
