#pragma once

// Inner-loop kernels on contiguous complex<double> arrays.
//
// Each variant computes re/im parts with the same operation order (no FMA
// contraction), so the scalar and AVX2 tables agree bitwise on caxpy, cscale
// and max_abs2_diff. sum_abs2 reassociates the sum and agrees to rounding.

#include <complex>
#include <cstddef>

namespace asymrep::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  /// y[i] += alpha * x[i]
  void (*caxpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// y[i] = alpha * x[i]
  void (*cscale)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  /// max_i |x[i] - y[i]|^2
  double (*max_abs2_diff)(std::size_t n, const cplx* x, const cplx* y);
  /// sum_i |x[i]|^2
  double (*sum_abs2)(std::size_t n, const cplx* x);
};

const KernelTable& scalar();

/// AVX2 table, or nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// Table used by the library. Picked once: ASYMREP_SIMD=scalar|avx2 forces a
/// choice, otherwise the widest supported variant wins.
const KernelTable& active();

}  // namespace asymrep::kernels
