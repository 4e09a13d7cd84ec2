#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "numrad/errors.hpp"
#include "numrad/matrix.hpp"

namespace numrad {

/// The 2n x 2n Hermitian block matrix [[Z, A], [A*, -Z]].
HermitianMatrix build_phi(const ComplexMatrix& a, const HermitianMatrix& z);

/// Number of leading eigenvalues (nonincreasing input) within
/// cluster_tol * max(1, top) of `top`.
int top_multiplicity(const std::vector<double>& eigenvalues, double top, double cluster_tol = 1e-6);

/// Whether lambda_max(Phi_A(Z)) <= r + tol * max(1, r).
bool is_representor(const ComplexMatrix& a, const HermitianMatrix& z, double r, double tol = 1e-7);

struct SdpOptions {
  double tol = 1e-8;
  int max_iterations = 100;
  double step_fraction = 0.98;
};

struct SdpStats {
  double objective = 0.0;
  double duality_gap = 0.0;   // <X, S>
  double kkt_residual = 0.0;  // dual residual, infinity norm
  int iterations = 0;
};

/// SDP-representor Z of A together with the spectrum of Phi_A(Z).
struct RepresentorResult {
  HermitianMatrix Z;
  double radius = 0.0;                  // lambda_max(Phi_A(Z))
  std::vector<double> phi_eigenvalues;  // nonincreasing
  int top_multiplicity = 0;
  SdpStats stats;
};

struct ProxResult {
  ComplexMatrix A;
  RepresentorResult rep;
  double objective = 0.0;  // r(A) + lambda ||A - Y||^2 evaluated at (A, Z)
};

/// Raised when the interior-point iteration stops short of its tolerance.
/// Carries the last iterate and its residuals.
class SdpFailure : public SolverFailure {
 public:
  SdpFailure(const std::string& what, SdpStats stats, HermitianMatrix z, ComplexMatrix a)
      : SolverFailure(what, std::max(stats.duality_gap, stats.kkt_residual)),
        stats_(stats),
        z_(std::move(z)),
        a_(std::move(a)) {}
  const SdpStats& stats() const noexcept { return stats_; }
  const HermitianMatrix& best_z() const noexcept { return z_; }
  const ComplexMatrix& best_a() const noexcept { return a_; }

 private:
  SdpStats stats_;
  HermitianMatrix z_;
  ComplexMatrix a_;
};

/// Primal-dual interior-point method with Nesterov-Todd scaling and a
/// Mehrotra predictor-corrector, for
///
///   minimize  c'y + y'Hy/2   subject to  t I - Phi_A(Z) >= 0
///
/// where y collects t, the real coordinates of Hermitian Z and, for the
/// proximal problem, the real coordinates of A. The cone is kept complex
/// Hermitian of order 2n. One instance per thread; the instance owns its
/// workspace.
class SdpSolver {
 public:
  explicit SdpSolver(SdpOptions options = {}) : options_(options) {}

  /// min over Z of lambda_max(Phi_A(Z)), which equals r(A).
  RepresentorResult solve_radius(const ComplexMatrix& a);

  /// min over (A, Z) of lambda_max(Phi_A(Z)) + lambda ||A - Y||_F^2.
  ProxResult solve_prox(const ComplexMatrix& y, double lambda);

  const SdpOptions& options() const noexcept { return options_; }

 private:
  struct Entry {
    std::uint32_t row;
    std::uint32_t col;
    Complex value;
  };
  using SparseHermitian = std::vector<Entry>;

  struct Problem {
    std::size_t order = 0;
    ComplexMatrix f0;
    std::vector<SparseHermitian> f;
    std::vector<double> c;
    std::vector<double> h;
    double constant = 0.0;
  };

  struct Iterate {
    std::vector<double> y;
    ComplexMatrix x;
    ComplexMatrix s;
    SdpStats stats;
    bool converged = false;
  };

  Iterate run(const Problem& p, std::vector<double> y0);
  ComplexMatrix slack(const Problem& p, const std::vector<double>& y) const;
  std::vector<double> adjoint(const Problem& p, const ComplexMatrix& x) const;

  SdpOptions options_;
  // Workspace reused across solves.
  std::vector<double> schur_;
};

RepresentorResult solve_radius_sdp(const ComplexMatrix& a, double tol = 1e-8);
ProxResult solve_prox_sdp(const ComplexMatrix& y, double lambda, double tol = 1e-8);

struct ProxOptimalityReport {
  double objective = 0.0;        // at the candidate (A, Z)
  double objective_zero = 0.0;   // at (0, 0)
  double objective_input = 0.0;  // at (Y, Z_Y)
  double comparison_violation = 0.0;
  double descent_violation = 0.0;  // worst negative one-sided difference quotient
  double max_violation = 0.0;
};

/// Independent check of a proximal solution: objective comparisons against
/// the trivial candidates 0 and Y, and one-sided difference quotients of
/// r(.) + lambda ||. - Y||^2 along 16 random unit directions (both signs),
/// with r evaluated by the boundary oracle.
ProxOptimalityReport verify_prox_optimality(const ComplexMatrix& y, const ComplexMatrix& a, double lambda,
                                            const RepresentorResult& rep, std::uint64_t seed = 0x5eed,
                                            double step = 1e-6);

}  // namespace numrad
