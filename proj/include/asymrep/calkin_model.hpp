#pragma once

// Finite truncation of H = (+)_k (V_k (+) (+)_m W_{k,m}): the shift F, the
// block-diagonal embedding psi of tail-stable sequences, the operator
// F' = 1 - psi(e) + psi(e) F and an index that ignores truncation artifacts.
//
// Conventions: V levels k = 1..K with dim V_k = n_k. W levels k = 0..K-1,
// W_k spans components n_k+1..n_{k+1} (n_0 = 0, so W_0 = V_1), copies m = 1..M.
// All level/copy/component numbers are 1-based except the W level.

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "asymrep/matrix.hpp"

namespace asymrep {

class LevelSpec {
 public:
  /// dims strictly increasing and positive, K = dims.size() >= 3,
  /// tail_copies M >= 1, buffer b >= 1 with b < min(K, M).
  LevelSpec(std::vector<int> dims, int tail_copies, int buffer);

  /// dims = 1, 2, ..., K.
  static LevelSpec consecutive(int K, int tail_copies, int buffer);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int levels() const noexcept { return static_cast<int>(dims_.size()); }
  int tail_copies() const noexcept { return tail_copies_; }
  int buffer() const noexcept { return buffer_; }
  /// n_k for k = 0..K (n_0 = 0).
  int dim(int k) const { return k == 0 ? 0 : dims_.at(static_cast<std::size_t>(k - 1)); }

 private:
  std::vector<int> dims_;
  int tail_copies_;
  int buffer_;
};

struct BasisIndex {
  enum class Kind { V, W };
  Kind kind;
  int level;
  int copy;       // W only, 1..M; 0 for V
  int component;  // V: 1..n_k; W: n_k+1..n_{k+1}

  bool operator==(const BasisIndex&) const = default;
};

/// All V blocks by level, then W blocks by (level, copy), components ascending.
class BasisLayout {
 public:
  BasisLayout(std::span<const int> dims, int tail_copies);

  const std::vector<BasisIndex>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const BasisIndex& operator[](std::size_t i) const { return entries_.at(i); }

  std::size_t v(int level, int component) const;
  std::size_t w(int level, int copy, int component) const;

  /// V levels <= K - b and W copies <= M - b.
  bool interior(std::size_t i, int buffer) const;

 private:
  std::vector<int> dims_;
  int tail_copies_;
  std::vector<BasisIndex> entries_;
  std::vector<std::size_t> v_offset_;  // by level 1..K
  std::vector<std::size_t> w_offset_;  // by level 0..K-1, start of copy 1
};

BasisLayout basis_layout(const LevelSpec& spec);

/// Blocks q_k (n_k x n_k) and the scalar at infinity lambda.
class TailStableSequence {
 public:
  TailStableSequence(std::vector<ComplexMatrix> blocks, cplx lambda);

  static TailStableSequence unit(std::span<const int> dims);
  /// e: diag(1, 0, ..., 0) on every level, lambda = 0.
  static TailStableSequence first_unit(std::span<const int> dims);
  /// Blocks from a seed q_1 extended by lambda: q_{k+1} = ext(q_k).
  static TailStableSequence extended(const ComplexMatrix& seed, cplx lambda, std::span<const int> dims);

  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  cplx lambda() const noexcept { return lambda_; }
  std::vector<int> dims() const;

  /// q_k in the upper-left of an N x N matrix with lambda on the new diagonal.
  ComplexMatrix extend(std::size_t k, std::size_t N) const;
  /// delta_k = ||q_{k+1} - ext(q_k)||, k = 1..K-1.
  std::vector<double> alpha_defects() const;
  /// delta nonincreasing over the tail and the last one <= tol.
  bool is_alpha_invariant(double tol) const;

  TailStableSequence operator+(const TailStableSequence& o) const;
  TailStableSequence operator*(const TailStableSequence& o) const;
  TailStableSequence adjoint() const;

 private:
  std::vector<ComplexMatrix> blocks_;
  cplx lambda_;
};

/// Finite sum of q_d (x) u^d.
struct CirclePolynomial {
  std::map<int, TailStableSequence> terms;
};

ComplexMatrix shift_F(const LevelSpec& spec);
ComplexMatrix psi(const TailStableSequence& q, const LevelSpec& spec);
/// sum_d psi(q_d) F^d, with F^{-1} = F*. Negative d requires unitary blocks.
ComplexMatrix psi_tensor(const CirclePolynomial& p, const LevelSpec& spec);
/// F' built directly from its action on the basis.
ComplexMatrix f_prime(const LevelSpec& spec);

struct IndexThresholds {
  double kernel_singular_value = 1e-10;
  double boundary_mass = 1e-8;
};

struct IndexReport {
  int index = 0;
  int kernel_dim = 0;         // interior-supported kernel vectors of A
  int cokernel_dim = 0;       // interior-supported kernel vectors of A*
  int raw_kernel_dim = 0;     // before filtering
  int raw_cokernel_dim = 0;
  std::vector<std::vector<cplx>> kernel;    // the counted vectors
  std::vector<std::vector<cplx>> cokernel;
};

IndexReport essential_index(const ComplexMatrix& a, const LevelSpec& spec, IndexThresholds t = {});

/// ||P_int [F, psi(q)] P_int|| with V levels 2..K-1 and W copies 1..M-1.
double commutator_defect(const TailStableSequence& q, const LevelSpec& spec);

struct RankStabilization {
  int rank = 0;
  int onset = 0;  // 1-based level from which the rank is constant through K
  std::vector<int> ranks;
};

RankStabilization rank_stabilization(const TailStableSequence& p, double tol);

}  // namespace asymrep
