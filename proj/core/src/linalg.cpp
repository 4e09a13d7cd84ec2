#include "numrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagonalThreshold = 1e-14;
constexpr double kOrthogonalityTol = 1e-15;
constexpr double kClampBand = 1e-10;

// 2x2 unitary J with J* [[a, b], [conj(b), d]] J diagonal, a and d real.
// J = diag(1, conj(e)) * [[c, s], [-s, c]] with e = b / |b|.
struct Rotation {
  double c;
  double s;
  Complex e;  // phase of the off-diagonal entry
  double t;   // tan of the rotation angle

  Complex jpp() const { return c; }
  Complex jpq() const { return s; }
  Complex jqp() const { return -s * std::conj(e); }
  Complex jqq() const { return c * std::conj(e); }
};

Rotation make_rotation(double a, double d, Complex b) {
  const double mag = std::abs(b);
  const Complex e = b / mag;
  const double theta = (d - a) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, t * c, e, t};
}

// Right-multiplies columns p and q of m by the rotation.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = mp * r.jpp() + mq * r.jqp();
    m(k, q) = mp * r.jpq() + mq * r.jqq();
  }
}

// Left-multiplies rows p and q of m by the adjoint of the rotation.
void rotate_rows_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = std::conj(r.jpp()) * mp + std::conj(r.jqp()) * mq;
    m(q, k) = std::conj(r.jpq()) * mp + std::conj(r.jqq()) * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

std::vector<std::size_t> descending_order(const std::vector<double>& values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return idx;
}

// Hestenes iteration on a tall (rows >= cols) matrix.
SingularValueDecomposition svd_tall(const ComplexMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t k = m.cols();
  ComplexMatrix u = m;
  ComplexMatrix v = ComplexMatrix::identity(k);

  auto column_dot = [&](std::size_t i, std::size_t j) {
    Complex s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += std::conj(u(r, i)) * u(r, j);
    return s;
  };

  bool converged = false;
  double worst = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    worst = 0.0;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double alpha = column_dot(i, i).real();
        const double beta = column_dot(j, j).real();
        const Complex gamma = column_dot(i, j);
        if (alpha == 0.0 || beta == 0.0) continue;
        const double rel = std::abs(gamma) / std::sqrt(alpha * beta);
        if (!(rel > kOrthogonalityTol)) continue;
        worst = std::max(worst, rel);
        converged = false;
        const Rotation rot = make_rotation(alpha, beta, gamma);
        rotate_columns(u, i, j, rot);
        rotate_columns(v, i, j, rot);
      }
    }
  }
  if (!converged) throw SolverFailure("svd: one-sided Jacobi did not converge", worst);

  std::vector<double> norms(k);
  for (std::size_t j = 0; j < k; ++j) norms[j] = norm2(u.column(j));
  const auto order = descending_order(norms);

  SingularValueDecomposition out{ComplexMatrix(rows, k), std::vector<double>(k), ComplexMatrix(k, k)};
  const double smax = k > 0 ? norms[order[0]] : 0.0;
  std::vector<std::size_t> weak;
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    out.sigma[c] = norms[src];
    for (std::size_t r = 0; r < k; ++r) out.V(r, c) = v(r, src);
    if (norms[src] > 1e-8 * smax && norms[src] > 0.0) {
      for (std::size_t r = 0; r < rows; ++r) out.U(r, c) = u(r, src) / norms[src];
    } else {
      weak.push_back(c);
      for (std::size_t r = 0; r < rows; ++r) out.U(r, c) = norms[src] > 0.0 ? u(r, src) / norms[src] : Complex{};
    }
  }

  // Columns attached to tiny singular values lose orthogonality when
  // normalized; rebuild them against the well-determined ones.
  if (!weak.empty()) {
    std::vector<std::size_t> strong;
    for (std::size_t c = 0; c < k; ++c)
      if (std::find(weak.begin(), weak.end(), c) == weak.end()) strong.push_back(c);
    ComplexMatrix basis(rows, strong.size());
    for (std::size_t s = 0; s < strong.size(); ++s) basis.set_column(s, out.U.column(strong[s]));
    for (std::size_t c : weak) {
      std::vector<Complex> w = out.U.column(c);
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t s = 0; s < basis.cols(); ++s) {
          Complex dot = 0.0;
          for (std::size_t r = 0; r < rows; ++r) dot += std::conj(basis(r, s)) * w[r];
          for (std::size_t r = 0; r < rows; ++r) w[r] -= dot * basis(r, s);
        }
      }
      const double nw = norm2(w);
      if (nw > 0.5) {
        for (auto& z : w) z /= nw;
      } else {
        const ComplexMatrix extra = orthonormal_complement(basis);
        w = extra.column(0);
      }
      ComplexMatrix grown(rows, basis.cols() + 1);
      grown.set_block(0, 0, basis);
      grown.set_column(basis.cols(), w);
      basis = std::move(grown);
      out.U.set_column(c, w);
    }
  }
  return out;
}

}  // namespace

EigenDecomposition herm_eig(const HermitianMatrix& h) {
  const std::size_t n = h.order();
  ComplexMatrix a = h.to_matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kOffDiagonalThreshold * a.frobenius_norm();

  int sweeps = 0;
  double off = off_diagonal_norm(a);
  while (off > threshold) {
    if (sweeps == kMaxSweeps) throw SolverFailure("herm_eig: Jacobi sweep cap reached", off);
    ++sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = a(p, q);
        if (std::abs(b) <= std::numeric_limits<double>::min()) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const Rotation rot = make_rotation(app, aqq, b);
        const double mag = std::abs(b);
        rotate_columns(a, p, q, rot);
        rotate_rows_adjoint(a, p, q, rot);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - rot.t * mag;
        a(q, q) = aqq + rot.t * mag;
        rotate_columns(v, p, q, rot);
      }
    }
    off = off_diagonal_norm(a);
  }

  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  const auto order = descending_order(diag);
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n), sweeps};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = diag[order[c]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> eigenvalues(const HermitianMatrix& h) { return herm_eig(h).eigenvalues; }

SingularValueDecomposition svd(const ComplexMatrix& m) {
  if (m.rows() >= m.cols()) return svd_tall(m);
  SingularValueDecomposition t = svd_tall(m.adjoint());
  return {std::move(t.V), std::move(t.sigma), std::move(t.U)};
}

std::vector<double> singular_values(const ComplexMatrix& m) { return svd(m).sigma; }

HermitianMatrix psd_sqrt(const HermitianMatrix& h) {
  const EigenDecomposition eig = herm_eig(h);
  const std::size_t n = h.order();
  if (n == 0) return h;
  const double band = kClampBand * std::max(1.0, h.frobenius_norm());
  const double lmin = eig.eigenvalues.back();
  if (lmin < -band) throw NotPsdError("psd_sqrt: matrix is not positive semidefinite", lmin);

  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < n; ++c) {
    const double root = std::sqrt(std::max(eig.eigenvalues[c], 0.0));
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= root;
  }
  return HermitianMatrix::hermitian_part(scaled * eig.eigenvectors.adjoint());
}

namespace {

std::vector<std::vector<Complex>> null_vectors(const ComplexMatrix& m, double cutoff, bool all) {
  const SingularValueDecomposition d = svd(m);
  std::vector<std::vector<Complex>> out;
  // Implicit zero singular values of wide matrices come first.
  if (m.cols() > m.rows()) {
    const ComplexMatrix extra = orthonormal_complement(d.V);
    for (std::size_t c = 0; c < extra.cols(); ++c) out.push_back(extra.column(c));
  }
  for (std::size_t c = d.sigma.size(); c-- > 0;) {
    if (all || d.sigma[c] <= cutoff) out.push_back(d.V.column(c));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Complex>> null_space(const ComplexMatrix& m, double rtol) {
  if (m.cols() == 0) return {};
  const auto sigma = m.rows() == 0 ? std::vector<double>{} : singular_values(m);
  const double smax = sigma.empty() ? 0.0 : sigma.front();
  if (m.rows() == 0) return null_vectors(ComplexMatrix::zeros(1, m.cols()), 0.0, true);
  return null_vectors(m, rtol * smax, smax == 0.0);
}

std::vector<std::vector<Complex>> null_space_abs(const ComplexMatrix& m, double atol) {
  if (m.cols() == 0) return {};
  if (m.rows() == 0) return null_vectors(ComplexMatrix::zeros(1, m.cols()), 0.0, true);
  return null_vectors(m, atol, false);
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& q) {
  const std::size_t n = q.rows();
  const std::size_t k = q.cols();
  if (k >= n) return ComplexMatrix(n, 0);
  ComplexMatrix basis = q;
  ComplexMatrix out(n, n - k);

  auto project_out = [&](std::vector<Complex>& w) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t s = 0; s < basis.cols(); ++s) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < n; ++r) dot += std::conj(basis(r, s)) * w[r];
        for (std::size_t r = 0; r < n; ++r) w[r] -= dot * basis(r, s);
      }
    }
  };

  for (std::size_t added = 0; added < n - k; ++added) {
    // Greedy: the unit vector with the largest residual after projection.
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Complex> w(n);
      w[i] = 1.0;
      project_out(w);
      const double nw = norm2(w);
      if (nw > best_norm + 1e-12) {
        best_norm = nw;
        best = std::move(w);
      }
    }
    for (auto& z : best) z /= best_norm;
    normalize_phase(best);
    out.set_column(added, best);
    ComplexMatrix grown(n, basis.cols() + 1);
    grown.set_block(0, 0, basis);
    grown.set_column(basis.cols(), best);
    basis = std::move(grown);
  }
  return out;
}

ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("nearest_unitary: matrix is not square");
  const SingularValueDecomposition d = svd(m);
  return d.U * d.V.adjoint();
}

ComplexMatrix cholesky(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimensionError("cholesky: matrix is not square");
  const std::size_t n = h.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = h(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) throw NotPsdError("cholesky: matrix is not positive definite", d);
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = h(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix lower_triangular_inverse(const ComplexMatrix& l) {
  const std::size_t n = l.rows();
  ComplexMatrix inv(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t i = c; i < n; ++i) {
      Complex s = i == c ? Complex{1.0} : Complex{};
      for (std::size_t k = c; k < i; ++k) s -= l(i, k) * inv(k, c);
      inv(i, c) = s / l(i, i);
    }
  }
  return inv;
}

void normalize_phase(std::span<Complex> v) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    // Ties within rounding go to the earlier index.
    if (std::abs(v[i]) > best * (1.0 + 1e-12)) {
      best = std::abs(v[i]);
      arg = i;
    }
  }
  if (best <= 0.0) return;
  const Complex phase = std::conj(v[arg]) / best;
  for (auto& z : v) z *= phase;
  v[arg] = Complex(std::abs(v[arg]), 0.0);
}

}  // namespace numrad
