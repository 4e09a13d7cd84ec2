#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "numrad/matrix.hpp"

namespace numrad {

/// Text format: the order n on the first line, then n lines of n entries
/// written as `re`, `imi`, `re+imi` or `re-imi`. `#` starts a comment and
/// blank lines are ignored. Throws ParseError with a 1-based position.
ComplexMatrix parse_matrix(std::string_view text);

/// Shortest round-trip representation of every entry, so that
/// parse_matrix(render_matrix(m)) == m bit for bit.
std::string render_matrix(const ComplexMatrix& m);

/// One entry, as written by render_matrix.
std::string render_entry(Complex z);

/// Throws IoError naming the path, or ParseError.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

}  // namespace numrad
