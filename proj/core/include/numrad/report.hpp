#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "numrad/experiment.hpp"

namespace numrad {

inline constexpr std::string_view kCsvHeader =
    "trial_id,n,rank,radius,divergence,delta_defect,m1,m2,m3,m5,separation,spanning_cond,solver_gap,"
    "identity_multiple,classified_disk,strongly_certified,degenerate,failed";

/// Scientific notation with 17 significant digits, independent of locale.
std::string format_real(double x);

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records);
std::vector<MeasureRecord> read_csv(std::istream& in);

/// Seven stacked panels (divergence, m4, m1, m2, m3, m5, separation with
/// spanning), x = rank, y = log10 of the value clipped at 1e-16.
void write_svg(std::ostream& out, const std::vector<MeasureRecord>& records);

/// Writes `stem`.csv and `stem`.svg under `dir`, creating it when missing.
/// Throws IoError naming the path on failure.
void emit_report(const std::filesystem::path& dir, const std::string& stem, const std::vector<MeasureRecord>& records,
                 bool svg = true);

}  // namespace numrad
