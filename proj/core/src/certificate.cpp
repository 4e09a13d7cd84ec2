#include "numrad/certificate.hpp"

#include <cmath>
#include <numbers>

#include "numrad/errors.hpp"
#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"

namespace numrad {

namespace {

constexpr int kResidualAngles = 64;

ComplexMatrix scaled(const ComplexMatrix& a, double r) {
  if (!(r > 0.0)) throw DegenerateInput("radius must be positive");
  return (1.0 / r) * a;
}

double certificate_residual(const ComplexMatrix& a, const ComplexMatrix& coeffs) {
  const std::size_t n = a.rows();
  const ComplexMatrix as = a.adjoint();
  double worst = 0.0;
  for (int k = 0; k < kResidualAngles; ++k) {
    const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * k / kResidualAngles);
    std::vector<Complex> p(n);
    Complex power = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) p[i] += coeffs(i, j) * power;
      power *= w;
    }
    const auto ap = a * std::span<const Complex>(p);
    const auto asp = as * std::span<const Complex>(p);
    std::vector<Complex> res(n);
    for (std::size_t i = 0; i < n; ++i) res[i] = std::conj(w) * ap[i] + w * asp[i] - 2.0 * p[i];
    worst = std::max(worst, norm2(res));
  }
  return worst;
}

// Combination of the null basis whose trailing coefficient blocks vanish
// for as many blocks as possible.
std::vector<Complex> least_degree(const std::vector<std::vector<Complex>>& basis, std::size_t n) {
  if (basis.size() == 1) return basis.front();
  const std::size_t k = basis.size();
  for (std::size_t d = 1; d <= n; ++d) {
    const std::size_t tail = n * (n - d);
    if (tail == 0) break;
    ComplexMatrix b(tail, k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < tail; ++i) b(i, c) = basis[c][n * d + i];
    const auto comb = null_space_abs(b, 1e-8);
    if (comb.empty()) continue;
    std::vector<Complex> v(n * n);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += comb.front()[c] * basis[c][i];
    return v;
  }
  return basis.front();
}

}  // namespace

ComplexMatrix build_delta(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("build_delta: matrix is not square");
  const std::size_t n = a.rows();
  const ComplexMatrix as = a.adjoint();
  ComplexMatrix d(n * (n + 2), n * n);
  for (std::size_t j = 0; j < n; ++j) {
    d.set_block(j * n, j * n, a);
    for (std::size_t i = 0; i < n; ++i) d((j + 1) * n + i, j * n + i) = -2.0;
    d.set_block((j + 2) * n, j * n, as);
  }
  return d;
}

double disk_defect(const ComplexMatrix& a, double r) {
  return singular_values(build_delta(scaled(a, r))).back();
}

std::optional<DiskCertificate> extract_certificate(const ComplexMatrix& a, double r, double rtol) {
  const ComplexMatrix an = scaled(a, r);
  const std::size_t n = an.rows();
  const auto basis = null_space(build_delta(an), rtol);
  if (basis.empty()) return std::nullopt;

  std::vector<Complex> v = least_degree(basis, n);
  const double len = norm2(v);
  for (auto& x : v) x /= len;
  normalize_phase(v);

  DiskCertificate cert;
  cert.coeffs = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) cert.coeffs(i, j) = v[j * n + i];
  cert.norm = cert.coeffs.frobenius_norm();
  cert.residual = certificate_residual(an, cert.coeffs);
  cert.spanning_cond = spanning_measure(cert);
  cert.null_dim = static_cast<int>(basis.size());
  return cert;
}

double spanning_measure(const DiskCertificate& cert) {
  const auto sv = singular_values(cert.coeffs);
  if (sv.empty() || sv.front() == 0.0) throw InvalidFactor("spanning_measure: zero coefficient matrix");
  return sv.back() / sv.front();
}

CertificationReport is_strongly_certified(const ComplexMatrix& a, double r, const Thresholds& t) {
  CertificationReport rep;
  rep.disk_defect = disk_defect(a, r);
  rep.separation = a.rows() >= 2 ? separation(a) : 0.0;
  if (rep.disk_defect <= t.disk) {
    const auto sv = singular_values(build_delta(scaled(a, r)));
    rep.certificate = extract_certificate(a, r, std::max(t.disk / sv.front(), 1e-14));
    if (rep.certificate) rep.spanning = rep.certificate->spanning_cond;
  }
  rep.strongly_certified = rep.disk_defect <= t.disk && rep.separation >= t.sep && rep.spanning >= t.span;
  return rep;
}

}  // namespace numrad
