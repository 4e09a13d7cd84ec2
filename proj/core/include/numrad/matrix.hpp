#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace numrad {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Entries are finite on construction from
/// external data; arithmetic results are not re-checked.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> d);
  static ComplexMatrix diagonal(std::initializer_list<double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  std::vector<Complex> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const Complex> v);
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x);

/// Re tr(A* B), the real inner product on complex matrices.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

double norm2(std::span<const Complex> v);

/// Dense Hermitian matrix. Only the lower triangle is stored; the upper
/// triangle is its conjugate mirror, so conjugate symmetry holds exactly.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(std::size_t n);

  /// Takes the lower triangle of `m` (diagonal imaginary parts dropped).
  static HermitianMatrix from_lower(const ComplexMatrix& m);
  /// (M + M*) / 2.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> d);
  static HermitianMatrix diagonal(std::initializer_list<double> d);

  std::size_t order() const noexcept { return n_; }

  Complex operator()(std::size_t i, std::size_t j) const;
  /// Writes H(i, j) and its mirror. The imaginary part of a diagonal entry
  /// is dropped.
  void set(std::size_t i, std::size_t j, Complex v);

  ComplexMatrix to_matrix() const;
  double frobenius_norm() const;

  HermitianMatrix& operator*=(double s);
  HermitianMatrix& operator+=(const HermitianMatrix& o);
  HermitianMatrix& operator-=(const HermitianMatrix& o);

 private:
  std::size_t index(std::size_t i, std::size_t j) const { return i * (i + 1) / 2 + j; }

  std::size_t n_ = 0;
  std::vector<Complex> lower_;
};

HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, HermitianMatrix a);

/// Throws numrad::Error when any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what);

}  // namespace numrad
