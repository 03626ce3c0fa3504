#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace asymrep {

using cplx = std::complex<double>;

/// Largest permitted rows*cols. Defaults to 8192^2 = 2^26 entries;
/// the environment variable ASYMREP_MAX_DIM=d sets it to d*d.
std::size_t max_matrix_entries();

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix. Throws SizeLimitError above max_matrix_entries().
  ComplexMatrix(std::size_t rows, std::size_t cols);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  /// Row-major initializer, e.g. from_rows({{0, 2}, {0, 0}}).
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* data() noexcept { return data_.data(); }
  const cplx* data() const noexcept { return data_.data(); }
  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  ComplexMatrix adjoint() const;
  bool all_finite() const;

  /// Copy of the rows x cols block starting at (r0, c0).
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
  /// Rows and columns picked by index lists, in the given order.
  ComplexMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  ComplexMatrix& operator+=(const ComplexMatrix& b);
  ComplexMatrix& operator-=(const ComplexMatrix& b);
  ComplexMatrix& operator*=(cplx s);

  bool operator==(const ComplexMatrix& b) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

/// Square matrix that is zero off the diagonal.
class DiagonalMatrix {
 public:
  DiagonalMatrix() = default;
  explicit DiagonalMatrix(std::vector<cplx> diagonal) : diagonal_(std::move(diagonal)) {}

  std::size_t dim() const noexcept { return diagonal_.size(); }
  const std::vector<cplx>& diagonal() const noexcept { return diagonal_; }
  cplx operator[](std::size_t i) const { return diagonal_[i]; }

  ComplexMatrix to_dense() const { return ComplexMatrix::diagonal(diagonal_); }

 private:
  std::vector<cplx> diagonal_;
};

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);

}  // namespace asymrep
