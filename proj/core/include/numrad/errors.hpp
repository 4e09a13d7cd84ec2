#pragma once

#include <stdexcept>
#include <string>

namespace numrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input that the operation is undefined for (zero radius, zero matrix, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// A matrix expected to be positive semidefinite has an eigenvalue below the
/// clamping band.
class NotPsdError : public Error {
 public:
  NotPsdError(const std::string& what, double lambda_min)
      : Error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

/// An iterative kernel did not reach its stopping criterion.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Ando factors, representors or certificates that fail their own checks.
class InvalidFactor : public Error {
 public:
  using Error::Error;
};

/// Matrix file syntax error, with 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Filesystem failures, message carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace numrad
