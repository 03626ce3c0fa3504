// Reference kernels. Compiled with -ffp-contract=off; see kernels.hpp.

#include <algorithm>

#include "asymrep/kernels.hpp"

namespace asymrep::kernels {
namespace {

void caxpy_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    const double pr = ar * xr - ai * xi;
    const double pi = ar * xi + ai * xr;
    ys[2 * i] += pr;
    ys[2 * i + 1] += pi;
  }
}

void cscale_scalar(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] = ar * xr - ai * xi;
    ys[2 * i + 1] = ar * xi + ai * xr;
  }
}

double max_abs2_diff_scalar(std::size_t n, const cplx* x, const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dr = xs[2 * i] - ys[2 * i];
    const double di = xs[2 * i + 1] - ys[2 * i + 1];
    best = std::max(best, dr * dr + di * di);
  }
  return best;
}

double sum_abs2_scalar(std::size_t n, const cplx* x) {
  const double* xs = reinterpret_cast<const double*>(x);
  double s = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) s += xs[i] * xs[i];
  return s;
}

constexpr KernelTable kScalar{"scalar", caxpy_scalar, cscale_scalar, max_abs2_diff_scalar,
                              sum_abs2_scalar};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace asymrep::kernels
