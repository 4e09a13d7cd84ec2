#include "numrad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "numrad/ando.hpp"
#include "numrad/errors.hpp"
#include "numrad/radius.hpp"
#include "numrad/sdp.hpp"

namespace numrad {

void ExperimentConfig::validate() const {
  if (n < 2) throw Error("experiment: n must be at least 2");
  if (trials < 1) throw Error("experiment: trials must be at least 1");
  if (!(lambda > 0.0)) throw Error("experiment: lambda must be positive");
  if (!(thresholds.disk > 0.0) || !(thresholds.sep > 0.0) || !(thresholds.span > 0.0))
    throw Error("experiment: thresholds must be positive");
  if (!(solver_tol > 0.0)) throw Error("experiment: solver tolerance must be positive");
  if (!(band_low > 0.0) || !(band_high > band_low)) throw Error("experiment: need 0 < band_low < band_high");
  if (threads < 0) throw Error("experiment: threads must be nonnegative");
}

ComplexMatrix random_unit_matrix(std::size_t n, SplitMix64& rng) {
  ComplexMatrix y = gaussian_matrix(n, rng);
  y *= 1.0 / y.frobenius_norm();
  return y;
}

ComplexMatrix trial_input(std::size_t n, std::uint64_t seed, int trial_id) {
  SplitMix64 rng(derive_stream_seed(seed, static_cast<std::uint64_t>(trial_id)));
  return random_unit_matrix(n, rng);
}

MeasureRecord run_trial(const ComplexMatrix& y, const ExperimentConfig& cfg, SdpSolver& solver, int trial_id) {
  MeasureRecord rec;
  rec.trial_id = trial_id;
  rec.n = static_cast<int>(y.rows());
  try {
    const ProxResult prox = solver.solve_prox(y, cfg.lambda);
    rec.solver_gap = prox.rep.stats.duality_gap;
    const ComplexMatrix& a = prox.A;
    if (a.frobenius_norm() <= 1e-8) {
      rec.degenerate = true;
      return rec;
    }

    const RepresentorResult rep = solver.solve_radius(a);
    const double r = radius_boundary(a).radius;
    if (std::abs(rep.radius - r) > 1e-6 * (1.0 + r)) {
      rec.failed = true;
      rec.failure = "sdp and boundary radii disagree";
      return rec;
    }
    rec.radius = r;
    rec.solver_gap = std::max(rec.solver_gap, rep.stats.duality_gap);
    rec.solver_multiplicity = multiplicity(a, rep.Z, r);
    rec.identity_multiple = is_identity_multiple(a);
    rec.divergence = divergence(a, r);

    const CertificationReport cert = is_strongly_certified(a, r, cfg.thresholds);
    rec.delta_defect = cert.disk_defect;
    rec.separation = cert.separation;
    rec.spanning_cond = cert.spanning;

    const PropertyMeasures m = property_measures(a, rep.Z, r);
    rec.m1 = m.m1;
    rec.m2 = m.m2;
    rec.m3 = m.m3;
    rec.m5 = m.m5;

    rec.classified_disk = rec.delta_defect <= cfg.thresholds.disk && !rec.identity_multiple;
    rec.strongly_certified = rec.classified_disk && cert.strongly_certified;

    try {
      const AndoFactors f = ando_from_representor(a, rep.Z, r);
      rec.canonical_multiplicity = multiplicity((1.0 / r) * a, canonical_representor(f.S), 1.0);
    } catch (const InvalidFactor&) {
      rec.canonical_multiplicity = -1;
    }
  } catch (const SdpFailure& e) {
    rec.failed = true;
    rec.solver_gap = e.stats().duality_gap;
    rec.failure = e.what();
  } catch (const Error& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  return rec;
}

MeasureRecord run_trial(const ComplexMatrix& y, const ExperimentConfig& cfg, int trial_id) {
  SdpSolver solver(SdpOptions{.tol = cfg.solver_tol});
  return run_trial(y, cfg, solver, trial_id);
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  if (const char* env = std::getenv("NUMRAD_THREADS")) {
    int cap = 0;
    const char* end = env + std::strlen(env);
    auto [p, ec] = std::from_chars(env, end, cap);
    if (ec == std::errc() && p == end && cap > 0) n = std::min(n, cap);
  }
  return n;
}

std::vector<MeasureRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MeasureRecord> records(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  auto work = [&] {
    SdpSolver solver(SdpOptions{.tol = cfg.solver_tol});
    for (int t = next++; t < cfg.trials; t = next++) {
      const ComplexMatrix y = trial_input(static_cast<std::size_t>(cfg.n), cfg.seed, t);
      records[static_cast<std::size_t>(t)] = run_trial(y, cfg, solver, t);
      records[static_cast<std::size_t>(t)].seed = derive_stream_seed(cfg.seed, static_cast<std::uint64_t>(t));
    }
  };
  const int workers = std::min(worker_count(cfg.threads), cfg.trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  auto ranked_end = std::stable_partition(records.begin(), records.end(),
                                          [](const MeasureRecord& r) { return !r.degenerate && !r.failed; });
  std::stable_sort(records.begin(), ranked_end, [](const MeasureRecord& a, const MeasureRecord& b) {
    return a.divergence < b.divergence || (a.divergence == b.divergence && a.trial_id < b.trial_id);
  });
  int rank = 0;
  for (auto it = records.begin(); it != ranked_end; ++it) it->rank = rank++;
  return records;
}

CovanishingSummary covanishing_report(const std::vector<MeasureRecord>& records, double band_low, double band_high) {
  CovanishingSummary s;
  for (const auto& r : records) {
    if (r.degenerate) ++s.degenerate;
    if (r.failed) ++s.failed;
    if (r.rank < 0) continue;
    if (r.identity_multiple) ++s.identity_multiples;
    if (r.classified_disk) {
      ++s.disk;
      if (r.strongly_certified) ++s.strongly_certified;
    } else {
      ++s.non_disk;
    }
    const double v[] = {r.m1, r.m2, r.m3, r.delta_defect, r.m5, r.divergence};
    if (std::any_of(std::begin(v), std::end(v), [&](double x) { return x > band_low && x < band_high; })) {
      ++s.in_band;
      continue;
    }
    ++s.considered;
    const bool zero = v[0] <= band_low;
    if (std::all_of(std::begin(v), std::end(v), [&](double x) { return (x <= band_low) == zero; })) ++s.agreeing;
  }
  if (s.considered > 0) s.agreement = static_cast<double>(s.agreeing) / s.considered;
  return s;
}

}  // namespace numrad
