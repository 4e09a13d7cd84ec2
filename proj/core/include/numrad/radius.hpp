#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "numrad/matrix.hpp"

namespace numrad {

/// Dense sampling of a function of the angle on [0, 2pi), followed by
/// golden-section refinement around the best `refinements` discrete local
/// optima.
struct CircleScanConfig {
  int samples = 1024;
  int refinements = 8;
  double angle_tol = 1e-12;
  bool keep_profile = false;
};

struct CircleScan {
  int sample_count = 0;
  double refined_angle = 0.0;  // in [0, 2pi)
  double refined_value = 0.0;
  std::vector<std::pair<double, double>> profile;  // (angle, value), when requested
};

enum class ScanGoal { minimize, maximize };

CircleScan scan_circle(const std::function<double(double)>& f, ScanGoal goal,
                       const CircleScanConfig& cfg = {});

enum class RadiusMethod { boundary, sdp };

struct RadiusResult {
  double radius = 0.0;
  double witness_angle = 0.0;
  RadiusMethod method = RadiusMethod::boundary;
};

/// e^{-i theta} A + e^{i theta} A*.
HermitianMatrix rotated_hermitian(const ComplexMatrix& a, double theta);

/// Half the top eigenvalue of e^{-i theta} A + e^{i theta} A*, the support
/// function of the field of values in direction e^{i theta}.
double support_value(const ComplexMatrix& a, double theta);

/// Numerical radius as the maximum of the support function over the circle.
RadiusResult radius_boundary(const ComplexMatrix& a, const CircleScanConfig& cfg = {});

/// 1 - min_theta support_value / r. Zero exactly for disk matrices; throws
/// DegenerateInput when r <= 0.
double divergence(const ComplexMatrix& a, double r, const CircleScanConfig& cfg = {});

/// min over the circle of the gap between the two largest eigenvalues of
/// e^{-i theta} A + e^{i theta} A*.
double separation(const ComplexMatrix& a, const CircleScanConfig& cfg = {});

/// ||A - (tr A / n) I||_F <= tol ||A||_F. The zero matrix is not a multiple
/// of the identity for this purpose.
bool is_identity_multiple(const ComplexMatrix& a, double tol = 1e-10);

}  // namespace numrad
