// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "numrad/ando.hpp"
#include "numrad/certificate.hpp"
#include "numrad/errors.hpp"
#include "numrad/experiment.hpp"
#include "numrad/linalg.hpp"
#include "numrad/radius.hpp"
#include "numrad/rng.hpp"
#include "numrad/sdp.hpp"

using namespace numrad;

namespace {

struct Check {
  std::vector<std::pair<std::string, int>> failures;  // message, repeat count
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    for (auto& [msg, count] : failures)
      if (msg == what) {
        ++count;
        return;
      }
    failures.emplace_back(what, 1);
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ComplexMatrix nilpotent_two() { return {{0.0, 2.0}, {0.0, 0.0}}; }
ComplexMatrix nonspanning_disk() { return {{0.0, 0.0, 2.0}, {0.0, 0.8, 0.0}, {0.0, 0.0, 0.0}}; }

ComplexMatrix jordan(std::size_t n) {
  ComplexMatrix j(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) j(i, i + 1) = 1.0;
  return j;
}

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return gaussian_matrix(n, rng);
}

double phi_max(const ComplexMatrix& a, const HermitianMatrix& z) { return eigenvalues(build_phi(a, z)).front(); }

void criterion1(Check& c) {
  const ComplexMatrix a = nilpotent_two();
  const RepresentorResult rep = solve_radius_sdp(a);
  c.expect(std::abs(rep.radius - 1.0) <= 1e-7, "radius " + num(rep.radius));
  c.expect((rep.Z.to_matrix() - ComplexMatrix::diagonal({-1.0, 1.0})).max_abs() <= 1e-6, "Z");
  const auto ev = eigenvalues(build_phi(a, rep.Z));
  const double expected[] = {1.0, 1.0, 1.0, -3.0};
  for (int k = 0; k < 4; ++k) c.expect(std::abs(ev[k] - expected[k]) <= 1e-7, "phi eigenvalue " + num(ev[k]));
  const auto cert = extract_certificate(a, rep.radius);
  c.expect(cert.has_value(), "no certificate");
  if (cert) {
    // Scaled so that the leading coefficient is 1.
    const ComplexMatrix p = (1.0 / cert->coeffs(0, 0)) * cert->coeffs;
    c.expect((p - ComplexMatrix::identity(2)).max_abs() <= 1e-6, "certificate coefficients");
  }
  c.expect(is_strongly_certified(a, rep.radius).strongly_certified, "not strongly certified");
}

void criterion2(Check& c) {
  const ComplexMatrix a = nonspanning_disk();
  c.expect(disk_defect(a, 1.0) <= 1e-8, "disk defect " + num(disk_defect(a, 1.0)));
  const auto cert = extract_certificate(a, 1.0);
  c.expect(cert && cert->spanning_cond <= 1e-6, "spanning");

  const double h = 1.0 / std::sqrt(2.0);
  const HermitianMatrix s_ref = HermitianMatrix::diagonal({1.0, h, 0.0});
  const HermitianMatrix c_ref = HermitianMatrix::diagonal({0.0, h, 1.0});
  const ComplexMatrix u_ref{{0.0, 0.0, 1.0}, {0.6, 0.8, 0.0}, {0.8, -0.6, 0.0}};
  const ComplexMatrix shown = Complex(2.0) * (s_ref.to_matrix() * u_ref * c_ref.to_matrix());
  c.expect((shown - a).frobenius_norm() <= 1e-10, "displayed factors");

  const RepresentorResult rep = solve_radius_sdp(a);
  try {
    const AndoFactors f = ando_from_representor(a, rep.Z, rep.radius);
    c.expect((f.S.to_matrix() - s_ref.to_matrix()).max_abs() <= 1e-6, "S");
    c.expect((f.C.to_matrix() - c_ref.to_matrix()).max_abs() <= 1e-6, "C");
    // U is fixed only on rows with s > 0 and columns with c > 0.
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 1; j < 3; ++j) c.expect(std::abs(f.U(i, j) - u_ref(i, j)) <= 1e-6, "U entry");
    c.expect(f.reconstruction_residual <= 1e-6 * std::max(1.0, a.frobenius_norm()), "reconstruction");
    c.expect(f.unitarity_residual <= 1e-7, "unitarity");
    const HermitianMatrix z = canonical_representor(f.S);
    c.expect((z.to_matrix() - ComplexMatrix::diagonal({-1.0, 0.0, 1.0})).max_abs() <= 1e-6, "canonical representor");
    c.expect(multiplicity(a, z, 1.0) == 3, "multiplicity " + std::to_string(multiplicity(a, z, 1.0)));
  } catch (const InvalidFactor& e) {
    c.expect(false, std::string("ando: ") + e.what());
  }
}

void criterion3(Check& c) {
  const ComplexMatrix a = nonspanning_disk();
  for (double s : {0.0, 0.3, 0.6}) {
    const HermitianMatrix z = HermitianMatrix::diagonal({-1.0, s, 1.0});
    const auto ev = eigenvalues(build_phi(a, z));
    const double q = std::sqrt(s * s + 16.0 / 25.0);
    std::vector<double> expected{1.0, 1.0, 1.0, -3.0, q, -q};
    std::sort(expected.rbegin(), expected.rend());
    for (int k = 0; k < 6; ++k) c.expect(std::abs(ev[k] - expected[k]) <= 1e-8, "spectrum at s=" + num(s));
  }
  for (double s : {0.0, 0.3, -0.3, 0.6, -0.6, 0.6 + 5e-8, 0.6 + 1e-3, -0.61, 0.7, 1.0}) {
    const bool feasible = is_representor(a, HermitianMatrix::diagonal({-1.0, s, 1.0}), 1.0);
    c.expect(feasible == (std::abs(s) <= 0.6 + 1e-7), "feasibility at s=" + num(s));
  }
  const int m = multiplicity(a, HermitianMatrix::diagonal({-1.0, 0.6, 1.0}), 1.0);
  c.expect(m == 4, "multiplicity at 3/5 is " + std::to_string(m));
}

void criterion4(Check& c) {
  const ComplexMatrix d01 = ComplexMatrix::diagonal({0.0, 1.0});
  const PropertyMeasures a = property_measures(d01, solve_radius_sdp(d01).Z, 1.0);
  c.expect(a.m1 == 0.0 || a.m1 <= 1e-12, "diag(0,1) m1 " + num(a.m1));
  c.expect(std::abs(a.m2 - 1.0) <= 1e-12, "diag(0,1) m2 " + num(a.m2));

  const ComplexMatrix d001 = ComplexMatrix::diagonal({0.0, 0.0, 1.0});
  const PropertyMeasures b = property_measures(d001, HermitianMatrix::diagonal({1.0, 1.0, 0.0}), 1.0);
  c.expect(b.m2 <= 1e-8, "diag(0,0,1) m2 " + num(b.m2));
  c.expect(b.m3 <= 1e-8, "diag(0,0,1) m3 " + num(b.m3));
  c.expect(b.m4 > 1e-3, "diag(0,0,1) m4 " + num(b.m4));

  const ComplexMatrix t{{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}};
  const HermitianMatrix z = HermitianMatrix::diagonal({1.0, 0.0, -1.0});
  const HermitianMatrix z_neg = HermitianMatrix::diagonal({-1.0, 0.0, 1.0});
  const double r = radius_boundary(t).radius;
  c.expect(std::abs(r - 1.0) <= 1e-10, "counterexample radius " + num(r));
  c.expect(phi_max(t, z) <= 1.0 + 1e-7, "counterexample Z=diag(1,0,-1) lambda_max " + num(phi_max(t, z)));
  c.expect(phi_max(t, z_neg) <= 1.0 + 1e-7, "counterexample Z=diag(-1,0,1) lambda_max " + num(phi_max(t, z_neg)));
  const auto ez = eigenvalues(z);
  c.expect(ez.front() == 1.0 && ez.back() == -1.0, "counterexample extremal eigenvalues");
  c.expect(divergence(t, r) > 1e-3, "counterexample divergence " + num(divergence(t, r)));
  c.expect(disk_defect(t, r) > 1e-3, "counterexample delta defect " + num(disk_defect(t, r)));
}

void criterion5(Check& c) {
  SdpSolver solver;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::uint64_t k = 0; k < 100; ++k) {
      const ComplexMatrix a = random_matrix(n, 1000 * n + k);
      const double rs = solver.solve_radius(a).radius;
      const double rb = radius_boundary(a).radius;
      const double err = std::abs(rs - rb) / (1.0 + rb);
      worst = std::max(worst, err);
      c.expect(err <= 1e-6, "n=" + std::to_string(n) + " k=" + std::to_string(k) + " gap " + num(err));
    }
  std::printf("  worst relative discrepancy %s\n", num(worst).c_str());
}

void criterion6(Check& c) {
  for (int n : {2, 3}) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.trials = 200;
    cfg.lambda = 0.75;
    const auto records = run_experiment(cfg);
    const CovanishingSummary s = covanishing_report(records, cfg.band_low, cfg.band_high);
    std::printf("  n=%d disk %d non-disk %d agreement %.4f (considered %d, in band %d) failed %d degenerate %d\n", n,
                s.disk, s.non_disk, s.agreement, s.considered, s.in_band, s.failed, s.degenerate);
    const std::string tag = "n=" + std::to_string(n) + " ";
    c.expect(s.disk > 0 && s.non_disk > 0, tag + "empty class");
    c.expect(s.agreement >= 0.95, tag + "agreement " + num(s.agreement));
    for (const MeasureRecord& r : records) {
      if (r.classified_disk) c.expect(r.strongly_certified, tag + "disk record not strongly certified");
      c.expect(!r.identity_multiple, tag + "identity multiple");
    }
  }
}

void criterion7(Check& c) {
  // Norm axioms and power inequality.
  for (std::uint64_t k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 5;
    const ComplexMatrix a = random_matrix(n, 7000 + k);
    const ComplexMatrix b = random_matrix(n, 8000 + k);
    const double ra = radius_boundary(a).radius;
    const double rb = radius_boundary(b).radius;
    c.expect(radius_boundary(a + b).radius <= ra + rb + 1e-8, "triangle inequality");
    const Complex s(-1.7, 0.4);
    c.expect(std::abs(radius_boundary(s * a).radius - std::abs(s) * ra) <= 1e-8 * std::abs(s) * ra, "homogeneity");
    c.expect(radius_boundary(a * a).radius <= ra * ra + 1e-8, "power k=2");
    c.expect(radius_boundary(a * a * a).radius <= ra * ra * ra + 1e-8, "power k=3");
  }
  c.expect(radius_boundary(ComplexMatrix(3, 3)).radius == 0.0, "zero radius");

  // Prox nonexpansiveness.
  for (std::uint64_t k = 0; k < 6; ++k) {
    ComplexMatrix y1 = random_matrix(3, 9000 + k);
    ComplexMatrix y2 = random_matrix(3, 9100 + k);
    y1 *= 1.0 / y1.frobenius_norm();
    y2 *= 1.0 / y2.frobenius_norm();
    const double d = (solve_prox_sdp(y1, 0.75).A - solve_prox_sdp(y2, 0.75).A).frobenius_norm();
    c.expect(d <= (y1 - y2).frobenius_norm() + 1e-6, "prox nonexpansive");
  }

  // Corpus of disk matrices (unitary conjugates and multiples of nilpotent
  // disk matrices) and non-disk matrices.
  std::vector<ComplexMatrix> disks;
  std::vector<ComplexMatrix> others;
  for (std::uint64_t k = 0; k < 10; ++k) {
    SplitMix64 rng(500 + k);
    const std::size_t n = 2 + k % 4;
    const ComplexMatrix q = random_unitary(n, rng);
    const ComplexMatrix base = k == 9 ? nilpotent_two() : jordan(n);
    const ComplexMatrix qq = k == 9 ? random_unitary(2, rng) : q;
    disks.push_back(Complex(0.5 + 0.3 * k, 0.2 * k) * (qq * base * qq.adjoint()));
  }
  // Non-disk matrices of unit radius with a known Ando representation: a
  // random product 2 S U C plus a unimodular scalar block, then a random
  // unitary similarity. Their representor is I - 2S^2.
  std::vector<HermitianMatrix> other_z;
  for (std::uint64_t k = 0; k < 10; ++k) {
    SplitMix64 rng(700 + k);
    const std::size_t m = 1 + k % 4;
    const std::size_t n = m + 1;
    std::vector<double> sv(n), cv(n);
    for (std::size_t i = 0; i < m; ++i) {
      const double t = 0.15 + 0.6 * rng.uniform();
      sv[i] = std::sin(t);
      cv[i] = std::cos(t);
    }
    sv[m] = cv[m] = 1.0 / std::sqrt(2.0);
    ComplexMatrix u(n, n);
    u.set_block(0, 0, random_unitary(m, rng));
    u(m, m) = std::polar(1.0, 6.0 * rng.uniform());
    const ComplexMatrix q = random_unitary(n, rng);
    const ComplexMatrix sm = q * ComplexMatrix::diagonal(sv) * q.adjoint();
    const ComplexMatrix cm = q * ComplexMatrix::diagonal(cv) * q.adjoint();
    others.push_back(Complex(2.0) * (sm * (q * u * q.adjoint()) * cm));
    other_z.push_back(canonical_representor(HermitianMatrix::hermitian_part(sm)));
  }

  // Disk-cone scale invariance, disk implies a double zero eigenvalue.
  double worst_scale = 0.0;
  for (const ComplexMatrix& a : disks) {
    const double r = radius_boundary(a).radius;
    const double d = disk_defect(a, r);
    c.expect(d <= 1e-8, "corpus disk defect " + num(d));
    for (double k : {2.0, 0.25, 1024.0}) c.expect(disk_defect(Complex(k) * a, k * r) == d, "scale invariance");
    // Other factors change the rounding of A / r.
    const double dev = std::abs(disk_defect(Complex(3.0) * a, 3.0 * r) - d);
    worst_scale = std::max(worst_scale, dev);
    c.expect(dev <= 1e-15, "scale invariance at c=3, deviation " + num(dev));
    const std::size_t n = a.rows();
    const auto s1 = singular_values(a);
    const auto s2 = singular_values(a * a);
    c.expect(s1.back() <= 1e-6 * s1.front(), "disk not singular");
    c.expect(s2[n - 2] <= 1e-6 * std::max(1.0, s2.front()), "disk without double zero");
  }

  std::printf("  scale deviation at c=3 %s\n", num(worst_scale).c_str());

  // Spanning certificate implies multiplicity above n for the canonical
  // representor; pencil singularity agrees with the disk defect.
  int pencils = 0;
  auto pencil_check = [&](const ComplexMatrix& a, const HermitianMatrix* known_z, bool expect_disk) {
    const double r = radius_boundary(a).radius;
    const ComplexMatrix an = Complex(1.0 / r) * a;
    const HermitianMatrix z = known_z ? (1.0 / r) * *known_z : solve_radius_sdp(an).Z;
    AndoFactors f;
    try {
      f = ando_from_representor(an, z, radius_boundary(an).radius);
    } catch (const InvalidFactor& e) {
      c.expect(false, std::string("ando: ") + e.what());
      return;
    }
    ++pencils;
    const bool singular = pencil_singularity(f.U, f.C, f.S).singularity <= 1e-7;
    const bool disk = disk_defect(an, 1.0) <= 1e-7;
    c.expect(singular == disk, "pencil/delta disagreement");
    c.expect(disk == expect_disk, "corpus classification");
    const auto cert = extract_certificate(an, 1.0);
    if (disk && cert && spanning_measure(*cert) >= 1e-6) {
      const HermitianMatrix z = canonical_representor(f.S);
      c.expect(multiplicity(an, z, 1.0) > static_cast<int>(a.rows()), "spanning without multiplicity");
    }
  };
  for (const ComplexMatrix& a : disks) pencil_check(a, nullptr, true);
  for (std::size_t k = 0; k < others.size(); ++k) pencil_check(others[k], &other_z[k], false);
  std::printf("  pencil checks on %d of %zu corpus matrices\n", pencils, disks.size() + others.size());
}

void criterion8(Check& c) {
  const ProxResult p = solve_prox_sdp(ComplexMatrix::identity(2), 0.75);
  const double err = (p.A - Complex(2.0 / 3.0) * ComplexMatrix::identity(2)).max_abs();
  c.expect(err <= 1e-6, "prox of identity " + num(err));
  for (std::size_t n = 2; n <= 8; ++n) {
    const ComplexMatrix j = jordan(n);
    const double rb = radius_boundary(j).radius;
    const double rs = solve_radius_sdp(j).radius;
    c.expect(std::abs(rs - rb) <= 1e-6, "jordan " + std::to_string(n) + " radius");
    c.expect(std::abs(rb - std::cos(std::numbers::pi / (n + 1))) <= 1e-10, "jordan closed form");
    const CertificationReport rep = is_strongly_certified(j, rb);
    c.expect(rep.disk_defect <= 1e-8, "jordan " + std::to_string(n) + " defect " + num(rep.disk_defect));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double seconds;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "2x2 nilpotent regression", 1.0, criterion1},
      {2, "non-spanning disk regression", 1.0, criterion2},
      {3, "representor family regression", 1.0, criterion3},
      {4, "counterexample chain", 1.0, criterion4},
      {5, "oracle equivalence", 120.0, criterion5},
      {6, "experiment reproduction", 600.0, criterion6},
      {7, "property suites", 300.0, criterion7},
      {8, "closed-form checks", 30.0, criterion8},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check.expect(elapsed < cr.seconds, "runtime " + num(elapsed) + " s");
    const bool ok = check.failures.empty();
    std::printf("criterion %d (%s): %s [%.2f s]", cr.id, cr.name, ok ? "PASS" : "FAIL", elapsed);
    for (std::size_t k = 0; k < check.failures.size() && k < 8; ++k) {
      const auto& [msg, count] = check.failures[k];
      std::printf("%s%s", k == 0 ? " - " : "; ", msg.c_str());
      if (count > 1) std::printf(" (x%d)", count);
    }
    if (check.failures.size() > 8) std::printf("; ... %zu more", check.failures.size() - 8);
    std::printf("\n");
    std::fflush(stdout);
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
