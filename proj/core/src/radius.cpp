#include "numrad/radius.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "numrad/errors.hpp"
#include "numrad/linalg.hpp"

namespace numrad {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

}  // namespace

CircleScan scan_circle(const std::function<double(double)>& f, ScanGoal goal, const CircleScanConfig& cfg) {
  if (cfg.samples < 3) throw Error("scan_circle: need at least 3 samples");
  if (cfg.refinements < 1) throw Error("scan_circle: need at least one refinement");
  const double sign = goal == ScanGoal::minimize ? 1.0 : -1.0;
  auto g = [&](double theta) { return sign * f(theta); };

  CircleScan out;
  out.sample_count = cfg.samples;
  if (cfg.keep_profile) out.profile.reserve(cfg.samples);

  const double step = kTwoPi / cfg.samples;
  std::vector<double> values(cfg.samples);
  for (int k = 0; k < cfg.samples; ++k) {
    const double theta = k * step;
    values[k] = g(theta);
    if (cfg.keep_profile) out.profile.emplace_back(theta, sign * values[k]);
  }

  // Discrete local optima, best first. Several optima can tie to within the
  // sampling error, so each of the leading ones is refined.
  std::vector<int> candidates;
  for (int k = 0; k < cfg.samples; ++k) {
    const double prev = values[(k + cfg.samples - 1) % cfg.samples];
    const double next = values[(k + 1) % cfg.samples];
    if (values[k] <= prev && values[k] <= next) candidates.push_back(k);
  }
  if (candidates.empty()) candidates.push_back(0);
  std::sort(candidates.begin(), candidates.end(), [&](int a, int b) { return values[a] < values[b]; });
  if (candidates.size() > static_cast<std::size_t>(cfg.refinements)) candidates.resize(cfg.refinements);

  double best_g = values[candidates.front()];
  double best_theta = candidates.front() * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int best_k : candidates) {
    // Golden-section search on the two cells around the sample.
    double lo = (best_k - 1) * step;
    double hi = (best_k + 1) * step;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double g1 = g(x1);
    double g2 = g(x2);
    while (hi - lo > cfg.angle_tol) {
      if (g1 <= g2) {
        hi = x2;
        x2 = x1;
        g2 = g1;
        x1 = hi - inv_phi * (hi - lo);
        g1 = g(x1);
      } else {
        lo = x1;
        x1 = x2;
        g1 = g2;
        x2 = lo + inv_phi * (hi - lo);
        g2 = g(x2);
      }
    }
    const double mid = 0.5 * (lo + hi);
    const double gmid = g(mid);
    for (auto [x, v] : {std::pair{best_k * step, values[best_k]}, std::pair{x1, g1}, std::pair{x2, g2},
                        std::pair{mid, gmid}}) {
      if (v < best_g) {
        best_g = v;
        best_theta = x;
      }
    }
  }
  out.refined_angle = wrap_angle(best_theta);
  out.refined_value = sign * best_g;
  return out;
}

HermitianMatrix rotated_hermitian(const ComplexMatrix& a, double theta) {
  if (!a.is_square()) throw DimensionError("rotated_hermitian: matrix is not square");
  const Complex w = std::polar(1.0, -theta);
  const std::size_t n = a.rows();
  HermitianMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) h.set(i, j, w * a(i, j) + std::conj(w * a(j, i)));
  return h;
}

double support_value(const ComplexMatrix& a, double theta) {
  if (a.rows() == 0) return 0.0;
  return 0.5 * eigenvalues(rotated_hermitian(a, theta)).front();
}

RadiusResult radius_boundary(const ComplexMatrix& a, const CircleScanConfig& cfg) {
  if (!a.is_square()) throw DimensionError("radius_boundary: matrix is not square");
  if (a.frobenius_norm() == 0.0) return {0.0, 0.0, RadiusMethod::boundary};
  const CircleScan scan = scan_circle([&](double t) { return support_value(a, t); }, ScanGoal::maximize, cfg);
  return {std::max(0.0, scan.refined_value), scan.refined_angle, RadiusMethod::boundary};
}

double divergence(const ComplexMatrix& a, double r, const CircleScanConfig& cfg) {
  if (!(r > 0.0)) throw DegenerateInput("divergence: radius must be positive");
  const CircleScan scan = scan_circle([&](double t) { return support_value(a, t); }, ScanGoal::minimize, cfg);
  return 1.0 - scan.refined_value / r;
}

double separation(const ComplexMatrix& a, const CircleScanConfig& cfg) {
  if (!a.is_square() || a.rows() < 2) throw DimensionError("separation: need a square matrix of order >= 2");
  const CircleScan scan = scan_circle(
      [&](double t) {
        const auto ev = eigenvalues(rotated_hermitian(a, t));
        return ev[0] - ev[1];
      },
      ScanGoal::minimize, cfg);
  return std::max(0.0, scan.refined_value);
}

bool is_identity_multiple(const ComplexMatrix& a, double tol) {
  if (!a.is_square()) return false;
  const double norm = a.frobenius_norm();
  if (norm == 0.0) return false;
  const Complex mean = a.trace() / static_cast<double>(a.rows());
  ComplexMatrix d = a;
  for (std::size_t i = 0; i < a.rows(); ++i) d(i, i) -= mean;
  return d.frobenius_norm() <= tol * norm;
}

}  // namespace numrad
