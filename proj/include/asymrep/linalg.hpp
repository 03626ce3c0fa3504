#pragma once

#include <functional>
#include <vector>

#include "asymrep/matrix.hpp"

namespace asymrep {

/// A = U diag(values) V*, values descending. U and V are full square unitaries.
struct SvdResult {
  std::vector<double> values;
  ComplexMatrix u;
  ComplexMatrix v;
};

/// Singular values, descending. Throws NumericalError on non-finite entries.
std::vector<double> singular_values(const ComplexMatrix& a);
SvdResult svd(const ComplexMatrix& a);

/// Largest singular value (0 for an empty matrix).
double operator_norm(const ComplexMatrix& a);

/// ||U*U - I||.
double unitarity_defect(const ComplexMatrix& u);

/// Kronecker product, a-index slow and b-index fast.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of singular values strictly above tol * (largest singular value).
int rank_eps(const ComplexMatrix& a, double tol);

/// Entrywise f on a diagonal with real entries in [0, 1] (1e-12 slack).
DiagonalMatrix diag_apply(const std::function<cplx(double)>& f, const DiagonalMatrix& d);

/// General inverse. Throws NumericalError when sigma_min / sigma_max < min_ratio.
ComplexMatrix inverse(const ComplexMatrix& a, double min_ratio = 1e-12);

/// a * diag(d), scaling column j by d[j].
ComplexMatrix scale_columns(const ComplexMatrix& a, std::span<const cplx> d);

}  // namespace asymrep
