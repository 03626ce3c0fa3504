#include "asymrep/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "asymrep/error.hpp"
#include "asymrep/kernels.hpp"

namespace asymrep {

namespace {

using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::MatrixXcd to_eigen(const ComplexMatrix& a) {
  if (!a.all_finite()) throw NumericalError("matrix has non-finite entries");
  return Eigen::Map<const RowMajor>(a.data(), static_cast<Eigen::Index>(a.rows()),
                                    static_cast<Eigen::Index>(a.cols()));
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
  Eigen::Map<RowMajor>(out.data(), m.rows(), m.cols()) = m;
  return out;
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) {
    if (!a.all_finite()) throw NumericalError("matrix has non-finite entries");
    return {};
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> s(to_eigen(a));
  const auto& v = s.singularValues();
  return {v.data(), v.data() + v.size()};
}

SvdResult svd(const ComplexMatrix& a) {
  if (a.size() == 0) return {{}, ComplexMatrix::identity(a.rows()), ComplexMatrix::identity(a.cols())};
  Eigen::BDCSVD<Eigen::MatrixXcd> s(to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& v = s.singularValues();
  return {{v.data(), v.data() + v.size()}, from_eigen(s.matrixU()), from_eigen(s.matrixV())};
}

double operator_norm(const ComplexMatrix& a) {
  auto s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity_defect needs a square matrix");
  return operator_norm(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t limit = max_matrix_entries();
  auto mul_ok = [](std::size_t x, std::size_t y, std::size_t cap) {
    return x == 0 || y <= cap / x;
  };
  if (!mul_ok(a.size(), b.size(), limit))
    throw SizeLimitError("kron result exceeds the entry limit " + std::to_string(limit));
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const cplx s = a(i, p);
      for (std::size_t r = 0; r < b.rows(); ++r)
        k.cscale(b.cols(), s, b.row(r).data(), out.row(i * b.rows() + r).data() + p * b.cols());
    }
  return out;
}

int rank_eps(const ComplexMatrix& a, double tol) {
  if (!(tol > 0.0)) throw DomainError("rank_eps tolerance must be positive");
  auto s = singular_values(a);
  if (s.empty()) return 0;
  const double cut = tol * s.front();
  return static_cast<int>(std::count_if(s.begin(), s.end(), [&](double x) { return x > cut; }));
}

DiagonalMatrix diag_apply(const std::function<cplx(double)>& f, const DiagonalMatrix& d) {
  constexpr double slack = 1e-12;
  std::vector<cplx> out;
  out.reserve(d.dim());
  for (cplx v : d.diagonal()) {
    if (std::abs(v.imag()) > slack || v.real() < -slack || v.real() > 1.0 + slack)
      throw DomainError("diag_apply: entry outside [0,1]");
    out.push_back(f(std::clamp(v.real(), 0.0, 1.0)));
  }
  return DiagonalMatrix(std::move(out));
}

ComplexMatrix inverse(const ComplexMatrix& a, double min_ratio) {
  if (!a.is_square()) throw DimensionError("inverse needs a square matrix");
  if (a.rows() == 0) return a;
  auto s = singular_values(a);
  if (s.front() == 0.0 || s.back() < min_ratio * s.front())
    throw NumericalError("matrix is singular or too ill-conditioned to invert");
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(a));
  return from_eigen(lu.inverse());
}

ComplexMatrix scale_columns(const ComplexMatrix& a, std::span<const cplx> d) {
  if (d.size() != a.cols()) throw DimensionError("scale_columns: diagonal length mismatch");
  ComplexMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) *= d[j];
  return out;
}

}  // namespace asymrep
