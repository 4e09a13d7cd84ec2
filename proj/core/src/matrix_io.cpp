#include "numrad/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "numrad/errors.hpp"

namespace numrad {

namespace {

struct Token {
  std::string_view text;
  int line;
  int column;
};

// Splits one line (comment stripped) into whitespace-separated tokens.
std::vector<Token> tokenize(std::string_view line, int line_no) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), line_no, static_cast<int>(start) + 1});
  }
  return out;
}

// Reads a signed decimal number at the front of `s`; returns characters used.
std::size_t read_number(std::string_view s, double& v, const Token& tok, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  if (i < s.size() && (s[i] == '+' || s[i] == '-'))
    throw ParseError("unexpected sign", tok.line, tok.column + static_cast<int>(offset + i));
  auto [p, ec] = std::from_chars(s.data() + i, s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range)
    throw ParseError("number out of range", tok.line, tok.column + static_cast<int>(offset));
  if (ec != std::errc() || !std::isfinite(v))
    throw ParseError("expected a finite number in '" + std::string(tok.text) + "'", tok.line,
                     tok.column + static_cast<int>(offset));
  if (negative) v = -v;
  return static_cast<std::size_t>(p - s.data());
}

Complex parse_entry(const Token& tok) {
  const std::string_view s = tok.text;
  double first = 0.0;
  std::size_t pos = read_number(s, first, tok, 0);
  if (pos == s.size()) return {first, 0.0};
  if (s[pos] == 'i' && pos + 1 == s.size()) return {0.0, first};
  if (s[pos] != '+' && s[pos] != '-')
    throw ParseError("unexpected character '" + std::string(1, s[pos]) + "'", tok.line,
                     tok.column + static_cast<int>(pos));
  double second = 0.0;
  const std::size_t used = read_number(s.substr(pos), second, tok, pos);
  pos += used;
  if (pos >= s.size() || s[pos] != 'i') throw ParseError("imaginary part must end with 'i'", tok.line,
                                                         tok.column + static_cast<int>(pos));
  if (pos + 1 != s.size())
    throw ParseError("trailing characters after entry", tok.line, tok.column + static_cast<int>(pos) + 1);
  return {first, second};
}

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

}  // namespace

ComplexMatrix parse_matrix(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::size_t start = 0;
  int last_line = 1;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    std::string_view line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto toks = tokenize(line, line_no);
    if (!toks.empty()) lines.push_back(std::move(toks));
    last_line = line_no;
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (lines.empty()) throw ParseError("missing matrix order", 1, 1);

  const auto& head = lines.front();
  if (head.size() != 1) throw ParseError("first line must hold only the order n", head[1].line, head[1].column);
  std::size_t n = 0;
  const auto t = head.front().text;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), n);
  if (ec != std::errc() || p != t.data() + t.size() || n == 0)
    throw ParseError("order must be a positive integer", head.front().line, head.front().column);

  if (lines.size() - 1 < n)
    throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(lines.size() - 1),
                     last_line, 1);
  if (lines.size() - 1 > n) throw ParseError("extra row", lines[n + 1].front().line, lines[n + 1].front().column);

  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lines[i + 1];
    if (row.size() != n) {
      const Token& at = row.size() > n ? row[n] : row.back();
      throw ParseError("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n), at.line,
                       row.size() > n ? at.column : at.column + static_cast<int>(at.text.size()));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = parse_entry(row[j]);
  }
  return m;
}

std::string render_entry(Complex z) {
  std::string s = shortest(z.real());
  const double im = z.imag();
  if (im == 0.0 && !std::signbit(im)) return s;
  s += std::signbit(im) ? '-' : '+';
  s += shortest(std::abs(im));
  s += 'i';
  return s;
}

std::string render_matrix(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("render_matrix: matrix is not square");
  std::string out = std::to_string(m.rows()) + '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += render_entry(m(i, j));
    }
    out += '\n';
  }
  return out;
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  if (f.bad()) throw IoError("read failed: " + path.string());
  return parse_matrix(buf.str());
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  const std::string text = render_matrix(m);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f.flush()) throw IoError("write failed: " + path.string());
}

}  // namespace numrad
