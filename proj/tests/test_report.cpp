#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "numrad/errors.hpp"
#include "numrad/report.hpp"

using namespace numrad;

namespace {

std::vector<MeasureRecord> sample_records(int count) {
  std::vector<MeasureRecord> out;
  for (int k = 0; k < count; ++k) {
    MeasureRecord r;
    r.trial_id = k;
    r.n = 3;
    r.rank = k % 4 == 3 ? -1 : k;
    r.radius = 0.1 * (k + 1) + 1.0 / 3.0;
    r.divergence = k * 1e-3;
    r.delta_defect = 1e-12 * (k + 1);
    r.m1 = 1.0 / (k + 7);
    r.m2 = std::ldexp(1.0, -k);
    r.m3 = 0.0;
    r.m5 = -0.0;
    r.separation = 4.0;
    r.spanning_cond = 1e-300;
    r.solver_gap = 5e-9;
    r.classified_disk = k % 2 == 0;
    r.strongly_certified = k % 3 == 0;
    r.degenerate = k % 4 == 3;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(Csv, HeaderOnly) {
  std::ostringstream out;
  write_csv(out, {});
  EXPECT_EQ(out.str(), std::string(kCsvHeader) + "\n");
}

TEST(Csv, RowsAndColumns) {
  std::ostringstream out;
  write_csv(out, sample_records(10));
  std::istringstream in(out.str());
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 17) << line;
  }
  EXPECT_EQ(rows, 10);
}

TEST(Csv, RoundTripIsExact) {
  const auto records = sample_records(10);
  std::ostringstream out;
  write_csv(out, records);
  std::istringstream in(out.str());
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    EXPECT_EQ(back[k].rank, records[k].rank);
    EXPECT_EQ(back[k].radius, records[k].radius);
    EXPECT_EQ(back[k].m1, records[k].m1);
    EXPECT_EQ(back[k].spanning_cond, records[k].spanning_cond);
    EXPECT_EQ(back[k].classified_disk, records[k].classified_disk);
    EXPECT_EQ(back[k].degenerate, records[k].degenerate);
  }
}

TEST(Csv, RejectsWrongHeader) {
  std::istringstream in("trial_id,n\n1,2\n");
  EXPECT_THROW(read_csv(in), Error);
}

TEST(Csv, FormatReal) {
  EXPECT_EQ(format_real(1.0), "1.0000000000000000e+00");
  EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
}

TEST(Svg, SevenPanels) {
  std::ostringstream out;
  write_svg(out, sample_records(10));
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t panels = 0;
  for (std::size_t pos = svg.find("class=\"panel\""); pos != std::string::npos;
       pos = svg.find("class=\"panel\"", pos + 1))
    ++panels;
  EXPECT_EQ(panels, 7u);
}

TEST(Emit, WritesFilesAndReportsBadPath) {
  const auto dir = std::filesystem::temp_directory_path() / "numrad_report_test";
  std::filesystem::remove_all(dir);
  emit_report(dir / "nested", "run", sample_records(4));
  EXPECT_TRUE(std::filesystem::exists(dir / "nested" / "run.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "nested" / "run.svg"));
  std::ofstream(dir / "file") << "x";
  try {
    emit_report(dir / "file", "run", {});
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("file"), std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
