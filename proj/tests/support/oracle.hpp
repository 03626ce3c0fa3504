#pragma once

// Independent singular-value oracle for tests: eigenvalues of A*A through the
// real symmetric embedding [[Re, -Im], [Im, Re]] and cyclic Jacobi sweeps.
// Shares no code with the library's SVD.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Eigenvalues of a real symmetric n x n matrix (row-major), ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    if (off <= 1e-30 * total || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Singular values of a rows x cols complex matrix (row-major), descending.
inline std::vector<double> singular_values(const std::vector<cplx>& a, std::size_t rows, std::size_t cols) {
  // H = A*A, cols x cols Hermitian.
  std::vector<cplx> h(cols * cols);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < rows; ++k) s += std::conj(a[k * cols + i]) * a[k * cols + j];
      h[i * cols + j] = s;
    }
  const std::size_t n = 2 * cols;
  std::vector<double> r(n * n);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      const cplx v = h[i * cols + j];
      r[i * n + j] = v.real();
      r[(i + cols) * n + (j + cols)] = v.real();
      r[i * n + (j + cols)] = -v.imag();
      r[(i + cols) * n + j] = v.imag();
    }
  auto ev = jacobi_eigenvalues(std::move(r), n);
  // Each eigenvalue of H appears twice in the embedding.
  std::vector<double> out;
  for (std::size_t i = 0; i < n; i += 2) out.push_back(std::sqrt(std::max(0.0, ev[i])));
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace oracle
