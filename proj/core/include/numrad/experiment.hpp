#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "numrad/certificate.hpp"
#include "numrad/matrix.hpp"
#include "numrad/rng.hpp"

namespace numrad {

class SdpSolver;

struct ExperimentConfig {
  int n = 3;
  int trials = 200;
  double lambda = 0.75;
  std::uint64_t seed = 1;
  Thresholds thresholds;
  double solver_tol = 1e-8;
  double band_low = 1e-5;
  double band_high = 1e-3;
  int threads = 0;  // 0: hardware concurrency, capped by NUMRAD_THREADS
  std::string output_dir = ".";

  /// Throws numrad::Error naming the first invalid field.
  void validate() const;
};

struct MeasureRecord {
  int trial_id = 0;
  int n = 0;
  int rank = -1;  // -1 for degenerate and failed trials
  std::uint64_t seed = 0;
  double radius = 0.0;
  double divergence = 0.0;
  double delta_defect = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m5 = 0.0;
  double separation = 0.0;
  double spanning_cond = 0.0;
  double solver_gap = 0.0;
  bool identity_multiple = false;
  bool classified_disk = false;
  bool strongly_certified = false;
  bool degenerate = false;
  bool failed = false;
  // Not part of the CSV.
  int solver_multiplicity = 0;
  int canonical_multiplicity = -1;  // -1 when no unitary Ando factorization was found
  std::string failure;
};

/// Standard complex Gaussian entries scaled to unit Frobenius norm.
ComplexMatrix random_unit_matrix(std::size_t n, SplitMix64& rng);

/// Input of trial `trial_id`, drawn from its own substream of `seed`.
ComplexMatrix trial_input(std::size_t n, std::uint64_t seed, int trial_id);

MeasureRecord run_trial(const ComplexMatrix& y, const ExperimentConfig& cfg, SdpSolver& solver, int trial_id = 0);
MeasureRecord run_trial(const ComplexMatrix& y, const ExperimentConfig& cfg, int trial_id = 0);

/// Number of worker threads: `requested` (or the hardware concurrency when
/// 0), capped by NUMRAD_THREADS when set.
int worker_count(int requested);

/// All trials, ranked by ascending divergence (ties by trial id) among the
/// non-degenerate, non-failed records, which come first; the rest follow in
/// trial order.
std::vector<MeasureRecord> run_experiment(const ExperimentConfig& cfg);

struct CovanishingSummary {
  int considered = 0;  // ranked records with no measure inside the band
  int agreeing = 0;
  int in_band = 0;
  double agreement = 1.0;  // agreeing / considered, 1 when nothing was considered
  int disk = 0;
  int non_disk = 0;
  int strongly_certified = 0;
  int identity_multiples = 0;
  int degenerate = 0;
  int failed = 0;
};

/// Checks that m1, m2, m3, m4, m5 and the divergence vanish together: a
/// value vanishes when <= band_low and is nonzero when >= band_high.
CovanishingSummary covanishing_report(const std::vector<MeasureRecord>& records, double band_low = 1e-5,
                                      double band_high = 1e-3);

}  // namespace numrad
