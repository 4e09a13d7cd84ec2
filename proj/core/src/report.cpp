#include "numrad/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

constexpr double kFloor = 1e-16;

std::string format_fixed(double x, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, digits);
  return {buf, res.ptr};
}

double parse_real(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("csv: bad number '" + std::string(s) + "'");
  return v;
}

long long parse_int(std::string_view s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("csv: bad integer '" + std::string(s) + "'");
  return v;
}

bool parse_flag(std::string_view s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw Error("csv: bad flag '" + std::string(s) + "'");
}

double log_value(double v) { return std::log10(std::max(v, kFloor)); }

}  // namespace

std::string format_real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific, 16);
  return {buf, res.ptr};
}

void write_csv(std::ostream& out, const std::vector<MeasureRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.n << ',' << r.rank;
    for (double v : {r.radius, r.divergence, r.delta_defect, r.m1, r.m2, r.m3, r.m5, r.separation, r.spanning_cond,
                     r.solver_gap})
      out << ',' << format_real(v);
    for (bool b : {r.identity_multiple, r.classified_disk, r.strongly_certified, r.degenerate, r.failed})
      out << ',' << (b ? '1' : '0');
    out << '\n';
  }
}

std::vector<MeasureRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw Error("csv: missing or unexpected header");
  std::vector<MeasureRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      f.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (f.size() != 18) throw Error("csv: line " + std::to_string(line_no) + " has " + std::to_string(f.size()) +
                                    " fields, expected 18");
    MeasureRecord r;
    r.trial_id = static_cast<int>(parse_int(f[0]));
    r.n = static_cast<int>(parse_int(f[1]));
    r.rank = static_cast<int>(parse_int(f[2]));
    r.radius = parse_real(f[3]);
    r.divergence = parse_real(f[4]);
    r.delta_defect = parse_real(f[5]);
    r.m1 = parse_real(f[6]);
    r.m2 = parse_real(f[7]);
    r.m3 = parse_real(f[8]);
    r.m5 = parse_real(f[9]);
    r.separation = parse_real(f[10]);
    r.spanning_cond = parse_real(f[11]);
    r.solver_gap = parse_real(f[12]);
    r.identity_multiple = parse_flag(f[13]);
    r.classified_disk = parse_flag(f[14]);
    r.strongly_certified = parse_flag(f[15]);
    r.degenerate = parse_flag(f[16]);
    r.failed = parse_flag(f[17]);
    out.push_back(r);
  }
  return out;
}

void write_svg(std::ostream& out, const std::vector<MeasureRecord>& records) {
  constexpr double width = 820.0, panel_h = 150.0, left = 60.0, right = 20.0, top = 24.0, gap = 30.0;
  constexpr double y_lo = -16.0, y_hi = 2.0;
  constexpr int panels = 7;
  const double plot_w = width - left - right;
  const double plot_h = panel_h - top;
  const double height = panels * (panel_h + gap) + gap;

  std::vector<const MeasureRecord*> ranked;
  for (const auto& r : records)
    if (r.rank >= 0) ranked.push_back(&r);
  std::sort(ranked.begin(), ranked.end(), [](auto* a, auto* b) { return a->rank < b->rank; });
  const double x_span = std::max<double>(1.0, static_cast<double>(ranked.size()) - 1.0);

  struct Series {
    const char* color;
    double (*get)(const MeasureRecord&);
  };
  struct Panel {
    const char* title;
    std::vector<Series> series;
  };
  const Panel layout[panels] = {
      {"divergence", {{"#1f77b4", [](const MeasureRecord& r) { return r.divergence; }}}},
      {"m4 disk defect", {{"#1f77b4", [](const MeasureRecord& r) { return r.delta_defect; }}}},
      {"m1 sigma_min(A)", {{"#1f77b4", [](const MeasureRecord& r) { return r.m1; }}}},
      {"m2 sigma_{n-1}(A^2)", {{"#1f77b4", [](const MeasureRecord& r) { return r.m2; }}}},
      {"m3 representor extremity", {{"#1f77b4", [](const MeasureRecord& r) { return r.m3; }}}},
      {"m5 multiplicity gap", {{"#1f77b4", [](const MeasureRecord& r) { return r.m5; }}}},
      {"separation (blue), spanning (red)",
       {{"#1f77b4", [](const MeasureRecord& r) { return r.separation; }},
        {"#d62728", [](const MeasureRecord& r) { return r.spanning_cond; }}}},
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(width, 0) << "\" height=\""
      << format_fixed(height, 0) << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (int p = 0; p < panels; ++p) {
    const double y0 = gap + p * (panel_h + gap);
    const double py = y0 + top;
    out << "<g class=\"panel\">\n<text x=\"" << format_fixed(left, 1) << "\" y=\"" << format_fixed(y0 + 14.0, 1) << "\">"
        << layout[p].title << "</text>\n";
    out << "<rect x=\"" << format_fixed(left, 1) << "\" y=\"" << format_fixed(py, 1) << "\" width=\""
        << format_fixed(plot_w, 1) << "\" height=\"" << format_fixed(plot_h, 1)
        << "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (int e = static_cast<int>(y_lo); e <= static_cast<int>(y_hi); e += 4) {
      const double ty = py + plot_h * (y_hi - e) / (y_hi - y_lo);
      out << "<text x=\"" << format_fixed(left - 6.0, 1) << "\" y=\"" << format_fixed(ty + 4.0, 1)
          << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    for (const auto& s : layout[p].series) {
      for (const auto* r : ranked) {
        const double v = s.get(*r);
        if (std::isnan(v)) continue;
        const double ly = std::clamp(log_value(v), y_lo, y_hi);
        const double cx = left + plot_w * r->rank / x_span;
        const double cy = py + plot_h * (y_hi - ly) / (y_hi - y_lo);
        out << "<circle cx=\"" << format_fixed(cx, 2) << "\" cy=\"" << format_fixed(cy, 2)
            << "\" r=\"1.8\" fill=\"" << s.color << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

void emit_report(const std::filesystem::path& dir, const std::string& stem, const std::vector<MeasureRecord>& records,
                 bool svg) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  auto write = [&](const std::filesystem::path& path, auto&& body) {
    std::ostringstream buf;
    body(buf);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << buf.str();
    if (!f.flush()) throw IoError("write failed: " + path.string());
  };
  write(dir / (stem + ".csv"), [&](std::ostream& o) { write_csv(o, records); });
  if (svg) write(dir / (stem + ".svg"), [&](std::ostream& o) { write_svg(o, records); });
}

}  // namespace numrad
