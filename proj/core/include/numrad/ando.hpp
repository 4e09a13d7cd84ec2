#pragma once

#include "numrad/matrix.hpp"

namespace numrad {

/// A / r(A) = 2 S U C with S, C PSD, S^2 + C^2 = I and U unitary.
struct AndoFactors {
  HermitianMatrix S;
  ComplexMatrix U;
  HermitianMatrix C;
  double reconstruction_residual = 0.0;  // ||A / r - 2SUC||_F
  double unitarity_residual = 0.0;       // ||U*U - I||_F
};

/// Measures of the five structural properties, on A / r and Z / r.
struct PropertyMeasures {
  double m1 = 0.0;  // sigma_min(A)
  double m2 = 0.0;  // sigma_{n-1}(A^2)
  double m3 = 0.0;  // max(1 - lambda_max(Z), lambda_min(Z) + 1)
  double m4 = 0.0;  // disk defect
  double m5 = 0.0;  // 1 - lambda_{n+1}(Phi_A(Z))
};

/// Ando factors built from a representor Z of A. S and C are taken as square
/// roots of (I - Z/r)/2 and (I + Z/r)/2 in the eigenbasis of Z; U solves
/// 2SUC = A/r where S and C are invertible and is completed to a unitary
/// matrix elsewhere. Throws InvalidFactor when Z is not a representor or the
/// residuals exceed 1e-6 max(1, ||A/r||_F) and 1e-7.
AndoFactors ando_from_representor(const ComplexMatrix& a, const HermitianMatrix& z, double r);

/// I - 2 S^2. Throws InvalidFactor unless 0 <= S and S^2 <= I.
HermitianMatrix canonical_representor(const HermitianMatrix& s);

struct PencilReport {
  double singularity = 0.0;  // max over test points w of sigma_min(UC - wS)
  double at_infinity = 0.0;  // sigma_min(S)
};

/// Evaluates the pencil UC - wS at w = 0 and w = 2 exp(2 pi i k / (n + 1)),
/// k = 0..n.
PencilReport pencil_singularity(const ComplexMatrix& u, const HermitianMatrix& c, const HermitianMatrix& s);

/// Number of eigenvalues of Phi_A(Z) within cluster_tol max(1, r) of r.
int multiplicity(const ComplexMatrix& a, const HermitianMatrix& z, double r, double cluster_tol = 1e-6);

PropertyMeasures property_measures(const ComplexMatrix& a, const HermitianMatrix& z, double r);

}  // namespace numrad
