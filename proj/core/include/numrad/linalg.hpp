#pragma once

#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

/// Spectral decomposition H = Q diag(eigenvalues) Q*, eigenvalues
/// nonincreasing and column k of `eigenvectors` paired with eigenvalue k.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
  int sweeps = 0;
};

/// Thin singular value decomposition M = U diag(sigma) V*, with
/// p = min(rows, cols) columns in U and V and sigma nonincreasing.
struct SingularValueDecomposition {
  ComplexMatrix U;
  std::vector<double> sigma;
  ComplexMatrix V;
};

/// Cyclic complex Jacobi. Throws SolverFailure when 60 sweeps do not bring
/// the off-diagonal mass below 1e-14 ||H||_F.
EigenDecomposition herm_eig(const HermitianMatrix& h);

/// Eigenvalues only, nonincreasing.
std::vector<double> eigenvalues(const HermitianMatrix& h);

/// One-sided (Hestenes) Jacobi on the columns of M, or of M* when M is wide.
/// Singular values carry absolute error of order eps ||M||.
SingularValueDecomposition svd(const ComplexMatrix& m);

/// Singular values only, nonincreasing.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-1e-10 max(1, ||H||_F), 0) are clamped to zero; anything lower throws
/// NotPsdError.
HermitianMatrix psd_sqrt(const HermitianMatrix& h);

/// Orthonormal right null vectors: right singular vectors with
/// sigma <= rtol * sigma_max (every vector when sigma_max == 0). For wide
/// matrices the implicit zero singular values are included.
std::vector<std::vector<Complex>> null_space(const ComplexMatrix& m, double rtol);

/// Same, but with an absolute singular value cutoff.
std::vector<std::vector<Complex>> null_space_abs(const ComplexMatrix& m, double atol);

/// Extends the orthonormal columns of `q` (n x k) to an orthonormal basis of
/// C^n, returning only the n - k new columns. The choice is deterministic.
ComplexMatrix orthonormal_complement(const ComplexMatrix& q);

/// Nearest unitary matrix in Frobenius norm (unitary polar factor).
ComplexMatrix nearest_unitary(const ComplexMatrix& m);

/// Lower-triangular L with H = L L*. Throws NotPsdError when H is not
/// numerically positive definite.
ComplexMatrix cholesky(const ComplexMatrix& h);

/// Inverse of a nonsingular lower-triangular matrix.
ComplexMatrix lower_triangular_inverse(const ComplexMatrix& l);

/// Rotates the phase of v so its largest-magnitude entry is real positive.
void normalize_phase(std::span<Complex> v);

}  // namespace numrad
