// AVX2 kernels: two complex<double> per __m256d. Tails fall back to the same
// scalar arithmetic as the reference table.

#include <immintrin.h>

#include <algorithm>

#include "asymrep/kernels.hpp"

namespace asymrep::kernels {
namespace {

// [ar*xr - ai*xi, ar*xi + ai*xr] for both complex lanes.
inline __m256d cmul_broadcast(__m256d ar, __m256d ai, __m256d x) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(ar, x), _mm256_mul_pd(ai, swapped));
}

void caxpy_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    __m256d x1 = _mm256_loadu_pd(xs + 2 * i + 4);
    __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    __m256d y1 = _mm256_loadu_pd(ys + 2 * i + 4);
    y0 = _mm256_add_pd(y0, cmul_broadcast(var, vai, x0));
    y1 = _mm256_add_pd(y1, cmul_broadcast(var, vai, x1));
    _mm256_storeu_pd(ys + 2 * i, y0);
    _mm256_storeu_pd(ys + 2 * i + 4, y1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d x0 = _mm256_loadu_pd(xs + 2 * i);
    __m256d y0 = _mm256_loadu_pd(ys + 2 * i);
    _mm256_storeu_pd(ys + 2 * i, _mm256_add_pd(y0, cmul_broadcast(var, vai, x0)));
  }
  for (; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    const double pr = ar * xr - ai * xi;
    const double pi = ar * xi + ai * xr;
    ys[2 * i] += pr;
    ys[2 * i + 1] += pi;
  }
}

void cscale_avx2(std::size_t n, cplx alpha, const cplx* x, cplx* y) {
  const double ar = alpha.real(), ai = alpha.imag();
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d var = _mm256_set1_pd(ar), vai = _mm256_set1_pd(ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(ys + 2 * i, cmul_broadcast(var, vai, _mm256_loadu_pd(xs + 2 * i)));
  for (; i < n; ++i) {
    const double xr = xs[2 * i], xi = xs[2 * i + 1];
    ys[2 * i] = ar * xr - ai * xi;
    ys[2 * i + 1] = ar * xi + ai * xr;
  }
}

double max_abs2_diff_avx2(std::size_t n, const cplx* x, const cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  const double* ys = reinterpret_cast<const double*>(y);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + 2 * i), _mm256_loadu_pd(ys + 2 * i));
    __m256d sq = _mm256_mul_pd(d, d);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) {
    const double dr = xs[2 * i] - ys[2 * i];
    const double di = xs[2 * i + 1] - ys[2 * i + 1];
    out = std::max(out, dr * dr + di * di);
  }
  return out;
}

double sum_abs2_avx2(std::size_t n, const cplx* x) {
  const double* xs = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(xs + 2 * i);
    __m256d b = _mm256_loadu_pd(xs + 2 * i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (std::size_t k = 2 * i; k < 2 * n; ++k) s += xs[k] * xs[k];
  return s;
}

constexpr KernelTable kAvx2{"avx2", caxpy_avx2, cscale_avx2, max_abs2_diff_avx2, sum_abs2_avx2};

}  // namespace

namespace detail {
const KernelTable* avx2_table() { return &kAvx2; }
}  // namespace detail

}  // namespace asymrep::kernels
