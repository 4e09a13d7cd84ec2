#include "numrad/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"
#include "numrad/rng.hpp"

namespace numrad {

namespace {

void hermitize(ComplexMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = 0; j < i; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = avg;
      m(j, i) = std::conj(avg);
    }
  }
}

// In-place lower Cholesky of a dense row-major symmetric matrix.
bool real_cholesky(std::vector<double>& a, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * m + k] * a[j * m + k];
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    a[j * m + j] = ljj;
    for (std::size_t i = j + 1; i < m; ++i) {
      double s = a[i * m + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * m + k] * a[j * m + k];
      a[i * m + j] = s / ljj;
    }
  }
  return true;
}

void real_cholesky_solve(const std::vector<double>& l, std::size_t m, std::vector<double>& b) {
  for (std::size_t i = 0; i < m; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * m + k] * b[k];
    b[i] = s / l[i * m + i];
  }
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < m; ++k) s -= l[k * m + i] * b[k];
    b[i] = s / l[i * m + i];
  }
}

// Largest alpha in (0, inf] with diag(lambda) + alpha * d >= 0.
double max_step(const std::vector<double>& lambda, const ComplexMatrix& d) {
  const std::size_t n = lambda.size();
  ComplexMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = d(i, j) / std::sqrt(lambda[i] * lambda[j]);
  const double lmin = eigenvalues(HermitianMatrix::hermitian_part(b)).back();
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

HermitianMatrix z_from_coordinates(std::size_t n, const std::vector<double>& y, std::size_t offset, double scale) {
  HermitianMatrix z(n);
  std::size_t k = offset;
  for (std::size_t i = 0; i < n; ++i) z.set(i, i, scale * y[k++]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = y[k++];
      const double im = y[k++];
      z.set(i, j, scale * Complex(re, im));
    }
  }
  return z;
}

ComplexMatrix a_from_coordinates(std::size_t n, const std::vector<double>& y, std::size_t offset) {
  ComplexMatrix a(n, n);
  std::size_t k = offset;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = y[k++];
      const double im = y[k++];
      a(i, j) = Complex(re, im);
    }
  }
  return a;
}

RepresentorResult make_representor(const ComplexMatrix& a, HermitianMatrix z, const SdpStats& stats) {
  RepresentorResult rep;
  rep.phi_eigenvalues = eigenvalues(build_phi(a, z));
  rep.radius = rep.phi_eigenvalues.front();
  rep.top_multiplicity = top_multiplicity(rep.phi_eigenvalues, rep.radius);
  rep.Z = std::move(z);
  rep.stats = stats;
  return rep;
}

}  // namespace

HermitianMatrix build_phi(const ComplexMatrix& a, const HermitianMatrix& z) {
  if (!a.is_square() || a.rows() != z.order()) {
    throw DimensionError("build_phi: A must be square with the order of Z");
  }
  const std::size_t n = a.rows();
  HermitianMatrix phi(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      phi.set(i, j, z(i, j));
      phi.set(n + i, n + j, -z(i, j));
    }
    for (std::size_t j = 0; j < n; ++j) phi.set(n + j, i, std::conj(a(i, j)));
  }
  return phi;
}

int top_multiplicity(const std::vector<double>& eigenvalues, double top, double cluster_tol) {
  const double band = cluster_tol * std::max(1.0, std::abs(top));
  int count = 0;
  for (double v : eigenvalues)
    if (top - v <= band) ++count;
  return count;
}

bool is_representor(const ComplexMatrix& a, const HermitianMatrix& z, double r, double tol) {
  const double top = eigenvalues(build_phi(a, z)).front();
  return top <= r + tol * std::max(1.0, r);
}

ComplexMatrix SdpSolver::slack(const Problem& p, const std::vector<double>& y) const {
  ComplexMatrix s = p.f0;
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    if (y[i] == 0.0) continue;
    for (const Entry& e : p.f[i]) s(e.row, e.col) += y[i] * e.value;
  }
  return s;
}

std::vector<double> SdpSolver::adjoint(const Problem& p, const ComplexMatrix& x) const {
  std::vector<double> out(p.f.size());
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    double s = 0.0;
    for (const Entry& e : p.f[i]) s += (e.value * x(e.col, e.row)).real();
    out[i] = s;
  }
  return out;
}

SdpSolver::Iterate SdpSolver::run(const Problem& p, std::vector<double> y0) {
  const std::size_t order = p.order;
  const std::size_t m = p.f.size();
  const bool coupled = std::any_of(p.h.begin(), p.h.end(), [](double v) { return v != 0.0; });
  double cnorm = 0.0;
  for (double v : p.c) cnorm = std::max(cnorm, std::abs(v));

  Iterate it;
  it.y = std::move(y0);
  it.s = slack(p, it.y);
  it.x = ComplexMatrix::identity(order);
  it.x *= 1.0 / static_cast<double>(order);

  auto evaluate = [&](Iterate& cur) {
    std::vector<double> rd = adjoint(p, cur.x);
    double rd_max = 0.0;
    double pobj = p.constant;
    for (std::size_t i = 0; i < m; ++i) {
      rd[i] = p.c[i] + p.h[i] * cur.y[i] - rd[i];
      rd_max = std::max(rd_max, std::abs(rd[i]));
      pobj += p.c[i] * cur.y[i] + 0.5 * p.h[i] * cur.y[i] * cur.y[i];
    }
    cur.stats.objective = pobj;
    cur.stats.duality_gap = std::max(0.0, real_inner(cur.x, cur.s));
    cur.stats.kkt_residual = rd_max;
    return rd;
  };
  auto merit = [&](const SdpStats& st) {
    return std::max(st.duality_gap / (1.0 + std::abs(st.objective)), st.kkt_residual / (1.0 + cnorm));
  };

  Iterate best = it;
  evaluate(best);
  schur_.assign(m * m, 0.0);

  // Gram matrix of the constraint matrices, for restoring dual feasibility
  // of each step exactly.
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (const Entry& e : p.f[i])
        for (const Entry& q : p.f[j])
          if (e.row == q.row && e.col == q.col) gram[i * m + j] += (std::conj(e.value) * q.value).real();
  const bool gram_ok = real_cholesky(gram, m);

  for (int iter = 0;; ++iter) {
    std::vector<double> rd = evaluate(it);
    it.stats.iterations = iter;
    if (merit(it.stats) < merit(best.stats)) best = it;
    if (merit(it.stats) <= options_.tol) {
      it.converged = true;
      return it;
    }
    if (iter >= options_.max_iterations) break;
    const double mu = it.stats.duality_gap / static_cast<double>(order);
    if (!(mu > 0.0)) break;

    // Nesterov-Todd scaling point W = G G* with G* S G = G^{-1} X G^{-*} = diag(lambda).
    ComplexMatrix ls, lx;
    try {
      ls = cholesky(it.s);
      lx = cholesky(it.x);
    } catch (const NotPsdError&) {
      break;
    }
    const SingularValueDecomposition nt = svd(ls.adjoint() * lx);
    const std::vector<double>& lambda = nt.sigma;
    if (!(lambda.back() > 0.0)) break;
    ComplexMatrix g = lx * nt.V;
    ComplexMatrix vx = nt.V.adjoint() * lower_triangular_inverse(lx);
    for (std::size_t c = 0; c < order; ++c) {
      const double root = std::sqrt(lambda[c]);
      for (std::size_t r = 0; r < order; ++r) {
        g(r, c) /= root;
        vx(c, r) *= root;
      }
    }
    const ComplexMatrix& g_inv = vx;
    ComplexMatrix w = g * g.adjoint();
    hermitize(w);

    // Schur complement H + [Re tr(F_i W F_j W)].
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i; j < m; ++j) {
        double s = 0.0;
        for (const Entry& e : p.f[i])
          for (const Entry& q : p.f[j]) s += (e.value * q.value * w(e.col, q.row) * w(q.col, e.row)).real();
        schur_[i * m + j] = s;
        schur_[j * m + i] = s;
      }
      schur_[i * m + i] += p.h[i];
    }
    std::vector<double> factor = schur_;
    double shift = 0.0;
    double diag_max = 0.0;
    for (std::size_t i = 0; i < m; ++i) diag_max = std::max(diag_max, schur_[i * m + i]);
    while (!real_cholesky(factor, m)) {
      shift = shift == 0.0 ? 1e-14 * diag_max : shift * 100.0;
      if (shift > 1e-6 * diag_max) break;
      factor = schur_;
      for (std::size_t i = 0; i < m; ++i) factor[i * m + i] += shift;
    }
    if (shift > 1e-6 * diag_max) break;

    struct Direction {
      std::vector<double> dy;
      ComplexMatrix ds;
      ComplexMatrix dx;
    };
    auto solve_direction = [&](const ComplexMatrix& d) {
      const ComplexMatrix gdg = g * d * g.adjoint();
      std::vector<double> rhs = adjoint(p, gdg);
      for (std::size_t i = 0; i < m; ++i) rhs[i] -= rd[i];
      real_cholesky_solve(factor, m, rhs);
      Direction dir;
      dir.ds = ComplexMatrix(order, order);
      for (std::size_t i = 0; i < m; ++i)
        for (const Entry& e : p.f[i]) dir.ds(e.row, e.col) += rhs[i] * e.value;
      dir.dx = gdg - w * dir.ds * w;
      hermitize(dir.dx);
      dir.dy = std::move(rhs);
      return dir;
    };
    auto lyapunov = [&](const ComplexMatrix& r) {
      ComplexMatrix d(order, order);
      for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) d(i, j) = r(i, j) / (lambda[i] + lambda[j]);
      return d;
    };

    // Predictor (affine scaling).
    ComplexMatrix r_aff(order, order);
    for (std::size_t i = 0; i < order; ++i) r_aff(i, i) = -2.0 * lambda[i] * lambda[i];
    const Direction aff = solve_direction(lyapunov(r_aff));
    const ComplexMatrix dxs_aff = g_inv * aff.dx * g_inv.adjoint();
    const ComplexMatrix dss_aff = g.adjoint() * aff.ds * g;
    double ap = std::min(1.0, max_step(lambda, dss_aff));
    double ad = std::min(1.0, max_step(lambda, dxs_aff));
    if (coupled) ap = ad = std::min(ap, ad);
    const double mu_aff =
        real_inner(it.x + ad * aff.dx, it.s + ap * aff.ds) / static_cast<double>(order);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    ComplexMatrix r_cor = dxs_aff * dss_aff + dss_aff * dxs_aff;
    r_cor *= -1.0;
    for (std::size_t i = 0; i < order; ++i) r_cor(i, i) += 2.0 * sigma * mu - 2.0 * lambda[i] * lambda[i];
    Direction dir = solve_direction(lyapunov(r_cor));
    if (gram_ok) {
      // Least-squares correction so that A*(dX) = rd + H dy holds to rounding.
      std::vector<double> excess = adjoint(p, dir.dx);
      for (std::size_t i = 0; i < m; ++i) excess[i] -= rd[i] + p.h[i] * dir.dy[i];
      real_cholesky_solve(gram, m, excess);
      for (std::size_t i = 0; i < m; ++i)
        for (const Entry& e : p.f[i]) dir.dx(e.row, e.col) -= excess[i] * e.value;
    }
    const ComplexMatrix dxs = g_inv * dir.dx * g_inv.adjoint();
    const ComplexMatrix dss = g.adjoint() * dir.ds * g;
    ap = std::min(1.0, options_.step_fraction * max_step(lambda, dss));
    ad = std::min(1.0, options_.step_fraction * max_step(lambda, dxs));
    if (coupled) ap = ad = std::min(ap, ad);
    if (!(ap > 0.0) || !(ad > 0.0)) break;

    for (std::size_t i = 0; i < m; ++i) it.y[i] += ap * dir.dy[i];
    it.s = slack(p, it.y);
    hermitize(it.s);
    it.x += ad * dir.dx;
    hermitize(it.x);
  }
  return best;
}

RepresentorResult SdpSolver::solve_radius(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("solve_radius: matrix is not square");
  const std::size_t n = a.rows();
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return make_representor(a, HermitianMatrix(n), SdpStats{});
  const ComplexMatrix an = (1.0 / scale) * a;

  Problem p;
  p.order = 2 * n;
  p.f0 = ComplexMatrix(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p.f0(i, n + j) = -an(i, j);
      p.f0(n + j, i) = -std::conj(an(i, j));
    }
  }
  // t
  SparseHermitian ident;
  for (std::size_t k = 0; k < 2 * n; ++k) ident.push_back({std::uint32_t(k), std::uint32_t(k), 1.0});
  p.f.push_back(std::move(ident));
  // Z: -diag(E, -E) for each real coordinate E of a Hermitian matrix.
  auto u = [](std::size_t v) { return static_cast<std::uint32_t>(v); };
  for (std::size_t i = 0; i < n; ++i) p.f.push_back({{u(i), u(i), -1.0}, {u(n + i), u(n + i), 1.0}});
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      p.f.push_back({{u(i), u(j), -1.0}, {u(j), u(i), -1.0}, {u(n + i), u(n + j), 1.0}, {u(n + j), u(n + i), 1.0}});
      p.f.push_back({{u(i), u(j), -I}, {u(j), u(i), I}, {u(n + i), u(n + j), I}, {u(n + j), u(n + i), -I}});
    }
  }
  p.c.assign(p.f.size(), 0.0);
  p.c[0] = 1.0;
  p.h.assign(p.f.size(), 0.0);

  std::vector<double> y0(p.f.size(), 0.0);
  y0[0] = 3.0;  // 2 ||A||_F + 1 for the normalized A
  Iterate res = run(p, std::move(y0));
  HermitianMatrix z = z_from_coordinates(n, res.y, 1, scale);
  res.stats.objective *= scale;
  res.stats.duality_gap *= scale;
  if (!res.converged) {
    throw SdpFailure("solve_radius: interior-point method stopped before reaching tolerance", res.stats,
                     std::move(z), a);
  }
  return make_representor(a, std::move(z), res.stats);
}

ProxResult SdpSolver::solve_prox(const ComplexMatrix& y, double lambda) {
  if (!y.is_square()) throw DimensionError("solve_prox: matrix is not square");
  if (!(lambda > 0.0)) throw DegenerateInput("solve_prox: lambda must be positive");
  const std::size_t n = y.rows();
  auto u = [](std::size_t v) { return static_cast<std::uint32_t>(v); };

  Problem p;
  p.order = 2 * n;
  p.f0 = ComplexMatrix(2 * n, 2 * n);
  SparseHermitian ident;
  for (std::size_t k = 0; k < 2 * n; ++k) ident.push_back({u(k), u(k), 1.0});
  p.f.push_back(std::move(ident));
  const Complex I(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) p.f.push_back({{u(i), u(i), -1.0}, {u(n + i), u(n + i), 1.0}});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      p.f.push_back({{u(i), u(j), -1.0}, {u(j), u(i), -1.0}, {u(n + i), u(n + j), 1.0}, {u(n + j), u(n + i), 1.0}});
      p.f.push_back({{u(i), u(j), -I}, {u(j), u(i), I}, {u(n + i), u(n + j), I}, {u(n + j), u(n + i), -I}});
    }
  }
  const std::size_t a_offset = p.f.size();
  // A: -[[0, B], [B*, 0]] for B = E_ij and i E_ij.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      p.f.push_back({{u(i), u(n + j), -1.0}, {u(n + j), u(i), -1.0}});
      p.f.push_back({{u(i), u(n + j), -I}, {u(n + j), u(i), I}});
    }
  }
  p.c.assign(p.f.size(), 0.0);
  p.h.assign(p.f.size(), 0.0);
  p.c[0] = 1.0;
  std::vector<double> y0(p.f.size(), 0.0);
  double ynorm2 = 0.0;
  std::size_t k = a_offset;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (double coord : {y(i, j).real(), y(i, j).imag()}) {
        p.c[k] = -2.0 * lambda * coord;
        p.h[k] = 2.0 * lambda;
        y0[k] = coord;
        ynorm2 += coord * coord;
        ++k;
      }
    }
  }
  p.constant = lambda * ynorm2;
  y0[0] = 2.0 * std::sqrt(ynorm2) + 1.0;

  Iterate res = run(p, std::move(y0));
  ComplexMatrix a = a_from_coordinates(n, res.y, a_offset);
  HermitianMatrix z = z_from_coordinates(n, res.y, 1, 1.0);
  if (!res.converged) {
    throw SdpFailure("solve_prox: interior-point method stopped before reaching tolerance", res.stats,
                     std::move(z), std::move(a));
  }
  ProxResult out;
  out.rep = make_representor(a, std::move(z), res.stats);
  out.objective = out.rep.radius + lambda * std::pow((a - y).frobenius_norm(), 2);
  out.A = std::move(a);
  return out;
}

RepresentorResult solve_radius_sdp(const ComplexMatrix& a, double tol) {
  SdpSolver solver(SdpOptions{.tol = tol});
  return solver.solve_radius(a);
}

ProxResult solve_prox_sdp(const ComplexMatrix& y, double lambda, double tol) {
  SdpSolver solver(SdpOptions{.tol = tol});
  return solver.solve_prox(y, lambda);
}

ProxOptimalityReport verify_prox_optimality(const ComplexMatrix& y, const ComplexMatrix& a, double lambda,
                                            const RepresentorResult& rep, std::uint64_t seed, double step) {
  auto sq = [](double v) { return v * v; };
  ProxOptimalityReport out;
  out.objective = eigenvalues(build_phi(a, rep.Z)).front() + lambda * sq((a - y).frobenius_norm());
  out.objective_zero = lambda * sq(y.frobenius_norm());
  out.objective_input = solve_radius_sdp(y).radius;
  out.comparison_violation =
      std::max({0.0, out.objective - out.objective_zero, out.objective - out.objective_input});

  auto f = [&](const ComplexMatrix& b) {
    return radius_boundary(b).radius + lambda * sq((b - y).frobenius_norm());
  };
  const double f0 = f(a);
  SplitMix64 rng(seed);
  for (int k = 0; k < 16; ++k) {
    ComplexMatrix d = gaussian_matrix(a.rows(), rng);
    d *= 1.0 / d.frobenius_norm();
    const double forward = (f(a + step * d) - f0) / step;
    const double backward = (f(a - step * d) - f0) / step;
    out.descent_violation = std::max({out.descent_violation, -forward, -backward});
  }
  out.max_violation = std::max(out.comparison_violation, out.descent_violation);
  return out;
}

}  // namespace numrad
