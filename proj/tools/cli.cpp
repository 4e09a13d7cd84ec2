#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "numrad/ando.hpp"
#include "numrad/certificate.hpp"
#include "numrad/errors.hpp"
#include "numrad/experiment.hpp"
#include "numrad/linalg.hpp"
#include "numrad/matrix_io.hpp"
#include "numrad/radius.hpp"
#include "numrad/report.hpp"
#include "numrad/sdp.hpp"

namespace numrad::cli {

namespace {

namespace fs = std::filesystem;

std::string fixed15(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, 15);
  return {buf, res.ptr};
}

std::string sci(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 6);
  return {buf, res.ptr};
}

void print_matrix(std::ostream& out, const std::string& name, const ComplexMatrix& m) {
  out << name << '\n' << render_matrix(m);
}

struct RadiusArgs {
  std::string path;
  std::string method = "both";
  double tol = 1e-8;
};

int cmd_radius(const RadiusArgs& a, std::ostream& out) {
  const ComplexMatrix m = read_matrix_file(a.path);
  if (!m.is_square()) throw DimensionError("matrix is not square");
  const bool sdp = a.method != "boundary";
  const bool boundary = a.method != "sdp";
  double r_boundary = 0.0;
  if (boundary) {
    const RadiusResult r = radius_boundary(m);
    r_boundary = r.radius;
    out << "radius " << fixed15(r.radius) << '\n';
    out << "witness_angle " << fixed15(r.witness_angle) << '\n';
  }
  if (sdp) {
    const RepresentorResult rep = solve_radius_sdp(m, a.tol);
    out << (boundary ? "radius_sdp " : "radius ") << fixed15(rep.radius) << '\n';
    out << "duality_gap " << sci(rep.stats.duality_gap) << '\n';
    out << "iterations " << rep.stats.iterations << '\n';
    out << "top_multiplicity " << rep.top_multiplicity << '\n';
    print_matrix(out, "Z", rep.Z.to_matrix());
    if (boundary) out << "discrepancy " << sci(std::abs(rep.radius - r_boundary)) << '\n';
  }
  return ok;
}

struct ProxArgs {
  std::string path;
  double lambda = 0.75;
  double tol = 1e-8;
  std::string out_a = "prox_A.txt";
  std::string out_z = "prox_Z.txt";
};

int cmd_prox(const ProxArgs& a, std::ostream& out) {
  const ComplexMatrix y = read_matrix_file(a.path);
  if (!(a.lambda > 0.0)) throw Error("lambda must be positive");
  const ProxResult p = solve_prox_sdp(y, a.lambda, a.tol);
  write_matrix_file(a.out_a, p.A);
  write_matrix_file(a.out_z, p.rep.Z.to_matrix());
  const double r = radius_boundary(p.A).radius;
  out << "radius " << fixed15(r) << '\n';
  out << "objective " << fixed15(p.objective) << '\n';
  out << "duality_gap " << sci(p.rep.stats.duality_gap) << '\n';
  out << "iterations " << p.rep.stats.iterations << '\n';
  const ProxOptimalityReport v = verify_prox_optimality(y, p.A, a.lambda, p.rep);
  out << "comparison_violation " << sci(v.comparison_violation) << '\n';
  out << "descent_violation " << sci(v.descent_violation) << '\n';
  out << "max_violation " << sci(v.max_violation) << '\n';
  out << "wrote " << a.out_a << ' ' << a.out_z << '\n';
  return ok;
}

struct CertifyArgs {
  std::string path;
  std::string coeffs;
  Thresholds thresholds;
};

int cmd_certify(const CertifyArgs& a, std::ostream& out) {
  const ComplexMatrix m = read_matrix_file(a.path);
  if (m.frobenius_norm() == 0.0) throw DegenerateInput("the zero matrix has no disk certificate");
  if (m.rows() < 2) throw DimensionError("certification needs order >= 2");
  const double r = radius_boundary(m).radius;
  const CertificationReport rep = is_strongly_certified(m, r, a.thresholds);
  const bool identity = is_identity_multiple(m);
  out << "radius " << fixed15(r) << '\n';
  out << "divergence " << sci(divergence(m, r)) << '\n';
  out << "delta_defect " << sci(rep.disk_defect) << '\n';
  out << "separation " << sci(rep.separation) << '\n';
  out << "spanning_cond " << sci(rep.spanning) << '\n';
  if (rep.certificate) {
    out << "certificate_residual " << sci(rep.certificate->residual) << '\n';
    out << "null_dim " << rep.certificate->null_dim << '\n';
  }
  const char* verdict = identity                        ? "identity-multiple"
                        : rep.strongly_certified       ? "strongly-certified-disk"
                        : rep.disk_defect <= a.thresholds.disk ? "disk"
                                                              : "non-disk";
  out << "verdict " << verdict << '\n';
  if (!a.coeffs.empty()) {
    if (!rep.certificate) throw DegenerateInput("no certificate to write: the matrix is not a disk matrix");
    write_matrix_file(a.coeffs, rep.certificate->coeffs);
    out << "wrote " << a.coeffs << '\n';
  }
  return ok;
}

struct AndoArgs {
  std::string path;
  double tol = 1e-8;
};

int cmd_ando(const AndoArgs& a, std::ostream& out) {
  const ComplexMatrix m = read_matrix_file(a.path);
  if (m.frobenius_norm() == 0.0) throw DegenerateInput("the zero matrix has radius 0");
  if (m.rows() < 2) throw DimensionError("Ando analysis needs order >= 2");
  const RepresentorResult rep = solve_radius_sdp(m, a.tol);
  const double r = radius_boundary(m).radius;
  out << "radius " << fixed15(r) << '\n';
  out << "multiplicity " << multiplicity(m, rep.Z, r) << '\n';
  const PropertyMeasures pm = property_measures(m, rep.Z, r);
  out << "m1 " << sci(pm.m1) << "\nm2 " << sci(pm.m2) << "\nm3 " << sci(pm.m3) << "\nm4 " << sci(pm.m4) << "\nm5 "
      << sci(pm.m5) << '\n';
  print_matrix(out, "Z", rep.Z.to_matrix());
  const AndoFactors f = ando_from_representor(m, rep.Z, r);
  print_matrix(out, "S", f.S.to_matrix());
  print_matrix(out, "U", f.U);
  print_matrix(out, "C", f.C.to_matrix());
  out << "reconstruction_residual " << sci(f.reconstruction_residual) << '\n';
  out << "unitarity_residual " << sci(f.unitarity_residual) << '\n';
  const HermitianMatrix zc = canonical_representor(f.S);
  print_matrix(out, "canonical_Z", zc.to_matrix());
  out << "canonical_multiplicity " << multiplicity((1.0 / r) * m, zc, 1.0) << '\n';
  const PencilReport pencil = pencil_singularity(f.U, f.C, f.S);
  out << "pencil_singularity " << sci(pencil.singularity) << '\n';
  out << "sigma_min_S " << sci(pencil.at_infinity) << '\n';
  return ok;
}

void print_summary(std::ostream& out, int n, const CovanishingSummary& s) {
  out << "n " << n << ": disk " << s.disk << " non-disk " << s.non_disk << " strongly-certified "
      << s.strongly_certified << " identity-multiple " << s.identity_multiples << " degenerate " << s.degenerate
      << " failed " << s.failed << " agreement " << fixed15(s.agreement).substr(0, 5) << " (" << s.agreeing << '/'
      << s.considered << ", in band " << s.in_band << ")\n";
}

struct ExperimentArgs {
  std::vector<int> ns{2, 3, 4, 5};
  ExperimentConfig cfg;
  bool svg = true;
};

int cmd_experiment(ExperimentArgs a, std::ostream& out) {
  for (int n : a.ns) {
    a.cfg.n = n;
    a.cfg.validate();
    const auto records = run_experiment(a.cfg);
    const std::string stem = "experiment_n" + std::to_string(n);
    emit_report(a.cfg.output_dir, stem, records, a.svg);
    print_summary(out, n, covanishing_report(records, a.cfg.band_low, a.cfg.band_high));
    out << "wrote " << (fs::path(a.cfg.output_dir) / (stem + ".csv")).string() << '\n';
  }
  return ok;
}

struct ReportArgs {
  std::string csv;
  std::string svg;
  double band_low = 1e-5;
  double band_high = 1e-3;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  std::ifstream in(a.csv, std::ios::binary);
  if (!in) throw IoError("cannot open " + a.csv);
  std::vector<MeasureRecord> records;
  try {
    records = read_csv(in);
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw IoError(a.csv + ": " + e.what());
  }
  int n = records.empty() ? 0 : records.front().n;
  print_summary(out, n, covanishing_report(records, a.band_low, a.band_high));
  if (!a.svg.empty()) {
    std::ofstream f(a.svg, std::ios::binary);
    if (!f) throw IoError("cannot open " + a.svg + " for writing");
    write_svg(f, records);
    if (!f.flush()) throw IoError("write failed: " + a.svg);
    out << "wrote " << a.svg << '\n';
  }
  return ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical radius, proximal map and disk-matrix certification"};
  app.require_subcommand(1);

  RadiusArgs radius_args;
  auto* radius = app.add_subcommand("radius", "Numerical radius of a matrix file");
  radius->add_option("path", radius_args.path, "Matrix file")->required();
  radius->add_option("--method", radius_args.method, "sdp, boundary or both")
      ->check(CLI::IsMember({"sdp", "boundary", "both"}))
      ->capture_default_str();
  radius->add_option("--tol", radius_args.tol, "Interior-point tolerance")->capture_default_str();

  ProxArgs prox_args;
  auto* prox = app.add_subcommand("prox", "Proximal point of the numerical radius");
  prox->add_option("path", prox_args.path, "Matrix file")->required();
  prox->add_option("--lambda", prox_args.lambda, "Weight of the squared distance")->capture_default_str();
  prox->add_option("--tol", prox_args.tol, "Interior-point tolerance")->capture_default_str();
  prox->add_option("--out-a", prox_args.out_a, "Output file for the proximal point")->capture_default_str();
  prox->add_option("--out-z", prox_args.out_z, "Output file for its representor")->capture_default_str();

  CertifyArgs certify_args;
  auto* certify = app.add_subcommand("certify", "Disk-matrix certification report");
  certify->add_option("path", certify_args.path, "Matrix file")->required();
  certify->add_option("--coeffs", certify_args.coeffs, "Write certificate coefficients to this file");
  certify->add_option("--tau-disk", certify_args.thresholds.disk)->capture_default_str();
  certify->add_option("--tau-sep", certify_args.thresholds.sep)->capture_default_str();
  certify->add_option("--tau-span", certify_args.thresholds.span)->capture_default_str();

  AndoArgs ando_args;
  auto* ando = app.add_subcommand("ando", "Representor, Ando factors and property measures");
  ando->add_option("path", ando_args.path, "Matrix file")->required();
  ando->add_option("--tol", ando_args.tol, "Interior-point tolerance")->capture_default_str();

  ExperimentArgs exp_args;
  auto* experiment = app.add_subcommand("experiment", "Random proximal-point experiment");
  experiment->add_option("--n", exp_args.ns, "Matrix orders")->capture_default_str();
  experiment->add_option("--trials", exp_args.cfg.trials)->capture_default_str();
  experiment->add_option("--lambda", exp_args.cfg.lambda)->capture_default_str();
  experiment->add_option("--seed", exp_args.cfg.seed)->capture_default_str();
  experiment->add_option("--tau-disk", exp_args.cfg.thresholds.disk)->capture_default_str();
  experiment->add_option("--tau-sep", exp_args.cfg.thresholds.sep)->capture_default_str();
  experiment->add_option("--tau-span", exp_args.cfg.thresholds.span)->capture_default_str();
  experiment->add_option("--tol", exp_args.cfg.solver_tol)->capture_default_str();
  experiment->add_option("--band-low", exp_args.cfg.band_low)->capture_default_str();
  experiment->add_option("--band-high", exp_args.cfg.band_high)->capture_default_str();
  experiment->add_option("--threads", exp_args.cfg.threads, "0 uses every core")->capture_default_str();
  experiment->add_option("--out", exp_args.cfg.output_dir, "Output directory")->capture_default_str();
  experiment->add_flag("!--no-svg", exp_args.svg, "Skip the SVG plot");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Summarize an experiment CSV");
  report->add_option("csv", report_args.csv, "Experiment CSV")->required();
  report->add_option("--svg", report_args.svg, "Write the panel plot here");
  report->add_option("--band-low", report_args.band_low)->capture_default_str();
  report->add_option("--band-high", report_args.band_high)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    if (*radius) return cmd_radius(radius_args, out);
    if (*prox) return cmd_prox(prox_args, out);
    if (*certify) return cmd_certify(certify_args, out);
    if (*ando) return cmd_ando(ando_args, out);
    if (*experiment) return cmd_experiment(exp_args, out);
    if (*report) return cmd_report(report_args, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return parse_error;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << " (residual " << sci(e.residual()) << ")\n";
    return solver_error;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return io_error;
  } catch (const DegenerateInput& e) {
    err << "degenerate input: " << e.what() << '\n';
    return degenerate_input;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return other_error;
  }
  return usage;
}

}  // namespace numrad::cli
