#include "numrad/ando.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "numrad/certificate.hpp"
#include "numrad/errors.hpp"
#include "numrad/linalg.hpp"
#include "numrad/sdp.hpp"

namespace numrad {

namespace {

// Eigenvalues of (I -+ Z/r)/2 below this are treated as zero.
constexpr double kRangeTol = 1e-7;
constexpr double kBoundTol = 1e-6;

HermitianMatrix congruence(const ComplexMatrix& q, std::span<const double> d) {
  const std::size_t n = q.rows();
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) s += q(i, k) * d[k] * std::conj(q(j, k));
      h.set(i, j, i == j ? Complex(s.real(), 0.0) : s);
    }
  return h;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

}  // namespace

AndoFactors ando_from_representor(const ComplexMatrix& a, const HermitianMatrix& z, double r) {
  if (!a.is_square() || z.order() != a.rows()) throw DimensionError("ando_from_representor: shapes differ");
  if (!(r > 0.0)) throw DegenerateInput("ando_from_representor: radius must be positive");
  const std::size_t n = a.rows();
  const ComplexMatrix an = (1.0 / r) * a;

  const auto eig = herm_eig((1.0 / r) * z);
  const ComplexMatrix& q = eig.eigenvectors;
  std::vector<double> s(n), c(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double mu = eig.eigenvalues[k];
    if (std::abs(mu) > 1.0 + kBoundTol)
      throw InvalidFactor("ando_from_representor: eigenvalue " + fmt(mu) + " of Z/r outside [-1, 1]");
    double m = std::clamp(mu, -1.0, 1.0);
    if ((1.0 - m) / 2.0 <= kRangeTol) m = 1.0;
    if ((1.0 + m) / 2.0 <= kRangeTol) m = -1.0;
    s[k] = std::sqrt((1.0 - m) / 2.0);
    c[k] = std::sqrt((1.0 + m) / 2.0);
  }

  // In the eigenbasis of Z the equation reads 2 diag(s) V diag(c) = Q* A Q.
  const ComplexMatrix ap = q.adjoint() * an * q;
  std::vector<std::size_t> rows_s, free_rows, cols_c;
  for (std::size_t k = 0; k < n; ++k) {
    (s[k] > 0.0 ? rows_s : free_rows).push_back(k);
    if (c[k] > 0.0) cols_c.push_back(k);
  }

  ComplexMatrix v(n, n);
  if (!rows_s.empty() && !cols_c.empty()) {
    ComplexMatrix k(rows_s.size(), cols_c.size());
    for (std::size_t i = 0; i < rows_s.size(); ++i)
      for (std::size_t j = 0; j < cols_c.size(); ++j)
        k(i, j) = ap(rows_s[i], cols_c[j]) / (2.0 * s[rows_s[i]] * c[cols_c[j]]);

    // Clip K to a contraction, snapping singular values near 1, then fill
    // the rows where S vanishes with D = E (I - K*K)^(1/2) so the columns of
    // [K; D] are orthonormal.
    auto f = svd(k);
    for (auto& x : f.sigma) x = x >= 1.0 - kRangeTol ? 1.0 : x;
    ComplexMatrix kc(k.rows(), k.cols());
    for (std::size_t i = 0; i < k.rows(); ++i)
      for (std::size_t j = 0; j < k.cols(); ++j) {
        Complex acc = 0.0;
        for (std::size_t t = 0; t < f.sigma.size(); ++t) acc += f.U(i, t) * f.sigma[t] * std::conj(f.V(j, t));
        kc(i, j) = acc;
      }
    for (std::size_t i = 0; i < rows_s.size(); ++i)
      for (std::size_t j = 0; j < cols_c.size(); ++j) v(rows_s[i], cols_c[j]) = kc(i, j);

    // Right singular directions of K: the first sigma.size() from the SVD,
    // then the kernel of K when K is wide.
    std::vector<std::pair<double, std::vector<Complex>>> defect;
    for (std::size_t t = 0; t < f.sigma.size(); ++t)
      defect.emplace_back(std::sqrt(std::max(0.0, 1.0 - f.sigma[t] * f.sigma[t])), f.V.column(t));
    if (cols_c.size() > f.sigma.size()) {
      const ComplexMatrix extra = orthonormal_complement(f.V);
      for (std::size_t t = 0; t < extra.cols(); ++t) defect.emplace_back(1.0, extra.column(t));
    }
    std::stable_sort(defect.begin(), defect.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t t = 0; t < defect.size(); ++t) {
      const auto& [weight, dir] = defect[t];
      if (t >= free_rows.size()) {
        if (weight * weight > 1e-6)
          throw InvalidFactor("ando_from_representor: no unitary completion, defect " + fmt(weight));
        continue;
      }
      for (std::size_t j = 0; j < cols_c.size(); ++j) v(free_rows[t], cols_c[j]) += weight * std::conj(dir[j]);
    }
  } else if (!cols_c.empty()) {
    for (std::size_t j = 0; j < cols_c.size() && j < n; ++j) v(free_rows[j], cols_c[j]) = 1.0;
  }

  // Columns where C vanishes are unconstrained: complete to a unitary.
  ComplexMatrix fixed(n, cols_c.size());
  for (std::size_t j = 0; j < cols_c.size(); ++j) fixed.set_column(j, v.column(cols_c[j]));
  const ComplexMatrix rest = cols_c.size() < n ? orthonormal_complement(fixed) : ComplexMatrix(n, 0);
  std::size_t next = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (c[k] == 0.0) v.set_column(k, rest.column(next++));
  v = nearest_unitary(v);

  AndoFactors out;
  out.S = congruence(q, s);
  out.C = congruence(q, c);
  out.U = q * v * q.adjoint();
  const ComplexMatrix sm = out.S.to_matrix();
  const ComplexMatrix cm = out.C.to_matrix();
  out.reconstruction_residual = (an - Complex(2.0) * (sm * out.U * cm)).frobenius_norm();
  out.unitarity_residual = (out.U.adjoint() * out.U - ComplexMatrix::identity(n)).frobenius_norm();
  const double pyth = (sm * sm + cm * cm - ComplexMatrix::identity(n)).frobenius_norm();
  if (out.reconstruction_residual > 1e-6 * std::max(1.0, an.frobenius_norm()) || out.unitarity_residual > 1e-7 ||
      pyth > 1e-7)
    throw InvalidFactor("ando_from_representor: residuals " + fmt(out.reconstruction_residual) + " (2SUC), " +
                        fmt(out.unitarity_residual) + " (U*U), " + fmt(pyth) + " (S^2 + C^2)");
  return out;
}

HermitianMatrix canonical_representor(const HermitianMatrix& s) {
  const std::size_t n = s.order();
  const auto ev = eigenvalues(s);
  if (n > 0 && (ev.back() < -1e-10 * std::max(1.0, s.frobenius_norm()) || ev.front() > 1.0 + 1e-7))
    throw InvalidFactor("canonical_representor: S is not a PSD contraction");
  const ComplexMatrix sm = s.to_matrix();
  HermitianMatrix z = HermitianMatrix::identity(n);
  z -= 2.0 * HermitianMatrix::from_lower(sm * sm);
  return z;
}

PencilReport pencil_singularity(const ComplexMatrix& u, const HermitianMatrix& c, const HermitianMatrix& s) {
  const std::size_t n = u.rows();
  if (!u.is_square() || c.order() != n || s.order() != n) throw DimensionError("pencil_singularity: shapes differ");
  const ComplexMatrix uc = u * c.to_matrix();
  const ComplexMatrix sm = s.to_matrix();
  PencilReport rep;
  rep.singularity = singular_values(uc).back();
  for (std::size_t k = 0; k <= n; ++k) {
    const Complex w = std::polar(2.0, 2.0 * std::numbers::pi * k / (n + 1));
    rep.singularity = std::max(rep.singularity, singular_values(uc - w * sm).back());
  }
  rep.at_infinity = singular_values(sm).back();
  return rep;
}

int multiplicity(const ComplexMatrix& a, const HermitianMatrix& z, double r, double cluster_tol) {
  return top_multiplicity(eigenvalues(build_phi(a, z)), r, cluster_tol);
}

PropertyMeasures property_measures(const ComplexMatrix& a, const HermitianMatrix& z, double r) {
  if (!(r > 0.0)) throw DegenerateInput("property_measures: radius must be positive");
  const std::size_t n = a.rows();
  if (n < 2) throw DimensionError("property_measures: need order >= 2");
  const ComplexMatrix an = (1.0 / r) * a;
  const HermitianMatrix zn = (1.0 / r) * z;

  PropertyMeasures m;
  m.m1 = singular_values(an).back();
  m.m2 = singular_values(an * an)[n - 2];
  const auto ez = eigenvalues(zn);
  m.m3 = std::max({1.0 - ez.front(), ez.back() + 1.0, 0.0});
  m.m4 = disk_defect(a, r);
  m.m5 = std::max(0.0, 1.0 - eigenvalues(build_phi(an, zn))[n]);
  return m;
}

}  // namespace numrad
