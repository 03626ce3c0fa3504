#include "asymrep/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "asymrep/error.hpp"
#include "asymrep/kernels.hpp"

namespace asymrep {

namespace {
constexpr std::size_t kDefaultMaxDim = 8192;
}

std::size_t max_matrix_entries() {
  std::size_t dim = kDefaultMaxDim;
  if (const char* env = std::getenv("ASYMREP_MAX_DIM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) dim = static_cast<std::size_t>(v);
  }
  return dim * dim;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  const std::size_t limit = max_matrix_entries();
  if (cols != 0 && rows > limit / cols)
    throw SizeLimitError("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds the entry limit " + std::to_string(limit));
  data_.assign(rows * cols, cplx{});
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
  ComplexMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("ragged row list");
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                                   std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_) throw DimensionError("block out of range");
  ComplexMatrix b(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b) {
  if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix ComplexMatrix::select(std::span<const std::size_t> row_idx,
                                    std::span<const std::size_t> col_idx) const {
  ComplexMatrix s(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i) {
    if (row_idx[i] >= rows_) throw DimensionError("row index out of range");
    for (std::size_t j = 0; j < col_idx.size(); ++j) {
      if (col_idx[j] >= cols_) throw DimensionError("column index out of range");
      s(i, j) = (*this)(row_idx[i], col_idx[j]);
    }
  }
  return s;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += b.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= b.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  kernels::active().cscale(data_.size(), s, data_.data(), data_.data());
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

// i-k-j order over rows of b; zero entries of a are skipped, which makes
// products with the sparse lift/shift operators cheap.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("shape mismatch in product: " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  ComplexMatrix c(a.rows(), b.cols());
  const auto& k = kernels::active();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cplx* out = c.row(i).data();
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const cplx v = a(i, p);
      if (v == cplx{}) continue;
      k.caxpy(n, v, b.row(p).data(), out);
    }
  }
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch in diff");
  return std::sqrt(kernels::active().max_abs2_diff(a.size(), a.data(), b.data()));
}

double frobenius_norm(const ComplexMatrix& a) {
  return std::sqrt(kernels::active().sum_abs2(a.size(), a.data()));
}

}  // namespace asymrep
