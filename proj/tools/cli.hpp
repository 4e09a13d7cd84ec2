#pragma once

#include <iosfwd>

namespace numrad::cli {

enum ExitCode : int {
  ok = 0,
  usage = 1,
  parse_error = 2,
  solver_error = 3,
  io_error = 4,
  degenerate_input = 5,
  other_error = 6,
};

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace numrad::cli
