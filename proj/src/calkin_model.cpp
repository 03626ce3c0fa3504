#include "asymrep/calkin_model.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>

#include "asymrep/error.hpp"
#include "asymrep/linalg.hpp"

namespace asymrep {

namespace {

void check_dims(std::span<const int> dims) {
  if (dims.empty()) throw DomainError("dims must be nonempty");
  int prev = 0;
  for (int d : dims) {
    if (d <= prev) throw DomainError("dims must be strictly increasing positive integers");
    prev = d;
  }
}

std::size_t as_size(int v) { return static_cast<std::size_t>(v); }

}  // namespace

LevelSpec::LevelSpec(std::vector<int> dims, int tail_copies, int buffer)
    : dims_(std::move(dims)), tail_copies_(tail_copies), buffer_(buffer) {
  check_dims(dims_);
  if (levels() < 3) throw DomainError("LevelSpec needs K >= 3 levels");
  if (tail_copies_ < 1) throw DomainError("LevelSpec needs M >= 1");
  if (buffer_ < 1) throw DomainError("LevelSpec needs buffer b >= 1");
  if (buffer_ >= std::min(levels(), tail_copies_))
    throw DomainError("LevelSpec buffer b must be < min(K, M)");
}

LevelSpec LevelSpec::consecutive(int K, int tail_copies, int buffer) {
  if (K < 1) throw DomainError("LevelSpec needs K >= 3 levels");
  std::vector<int> d(as_size(K));
  for (int k = 0; k < K; ++k) d[as_size(k)] = k + 1;
  return LevelSpec(std::move(d), tail_copies, buffer);
}

BasisLayout::BasisLayout(std::span<const int> dims, int tail_copies)
    : dims_(dims.begin(), dims.end()), tail_copies_(tail_copies) {
  check_dims(dims);
  if (tail_copies < 1) throw DomainError("BasisLayout needs M >= 1");
  const int K = static_cast<int>(dims_.size());
  v_offset_.assign(as_size(K) + 1, 0);
  for (int k = 1; k <= K; ++k) {
    v_offset_[as_size(k)] = entries_.size();
    for (int i = 1; i <= dims_[as_size(k - 1)]; ++i)
      entries_.push_back({BasisIndex::Kind::V, k, 0, i});
  }
  w_offset_.assign(as_size(K), 0);
  for (int k = 0; k < K; ++k) {
    w_offset_[as_size(k)] = entries_.size();
    const int lo = k == 0 ? 1 : dims_[as_size(k - 1)] + 1;
    for (int m = 1; m <= tail_copies; ++m)
      for (int j = lo; j <= dims_[as_size(k)]; ++j) entries_.push_back({BasisIndex::Kind::W, k, m, j});
  }
}

std::size_t BasisLayout::v(int level, int component) const {
  const int K = static_cast<int>(dims_.size());
  if (level < 1 || level > K || component < 1 || component > dims_[as_size(level - 1)])
    throw DomainError("V index out of range");
  return v_offset_[as_size(level)] + as_size(component - 1);
}

std::size_t BasisLayout::w(int level, int copy, int component) const {
  const int K = static_cast<int>(dims_.size());
  if (level < 0 || level >= K || copy < 1 || copy > tail_copies_) throw DomainError("W index out of range");
  const int lo = level == 0 ? 1 : dims_[as_size(level - 1)] + 1;
  const int hi = dims_[as_size(level)];
  if (component < lo || component > hi) throw DomainError("W component out of range");
  const auto width = as_size(hi - lo + 1);
  return w_offset_[as_size(level)] + as_size(copy - 1) * width + as_size(component - lo);
}

bool BasisLayout::interior(std::size_t i, int buffer) const {
  const auto& e = entries_.at(i);
  if (e.kind == BasisIndex::Kind::V) return e.level <= static_cast<int>(dims_.size()) - buffer;
  return e.copy <= tail_copies_ - buffer;
}

BasisLayout basis_layout(const LevelSpec& spec) { return BasisLayout(spec.dims(), spec.tail_copies()); }

TailStableSequence::TailStableSequence(std::vector<ComplexMatrix> blocks, cplx lambda)
    : blocks_(std::move(blocks)), lambda_(lambda) {
  if (blocks_.empty()) throw DomainError("tail-stable sequence needs at least one block");
  for (const auto& b : blocks_)
    if (!b.is_square() || b.rows() == 0) throw DimensionError("tail-stable blocks must be square and nonempty");
}

TailStableSequence TailStableSequence::unit(std::span<const int> dims) {
  check_dims(dims);
  std::vector<ComplexMatrix> b;
  for (int d : dims) b.push_back(ComplexMatrix::identity(as_size(d)));
  return {std::move(b), 1.0};
}

TailStableSequence TailStableSequence::first_unit(std::span<const int> dims) {
  check_dims(dims);
  std::vector<ComplexMatrix> b;
  for (int d : dims) {
    ComplexMatrix m(as_size(d), as_size(d));
    m(0, 0) = 1.0;
    b.push_back(std::move(m));
  }
  return {std::move(b), 0.0};
}

TailStableSequence TailStableSequence::extended(const ComplexMatrix& seed, cplx lambda,
                                                std::span<const int> dims) {
  check_dims(dims);
  if (!seed.is_square() || seed.rows() != as_size(dims[0]))
    throw DimensionError("seed block must be n_1 x n_1");
  TailStableSequence s({seed}, lambda);
  for (std::size_t k = 1; k < dims.size(); ++k) s.blocks_.push_back(s.extend(k - 1, as_size(dims[k])));
  return s;
}

std::vector<int> TailStableSequence::dims() const {
  std::vector<int> d;
  for (const auto& b : blocks_) d.push_back(static_cast<int>(b.rows()));
  return d;
}

ComplexMatrix TailStableSequence::extend(std::size_t k, std::size_t N) const {
  const auto& q = blocks_.at(k);
  if (N < q.rows()) throw DimensionError("extension target is smaller than the block");
  ComplexMatrix out(N, N);
  out.set_block(0, 0, q);
  for (std::size_t i = q.rows(); i < N; ++i) out(i, i) = lambda_;
  return out;
}

std::vector<double> TailStableSequence::alpha_defects() const {
  std::vector<double> d;
  for (std::size_t k = 0; k + 1 < blocks_.size(); ++k)
    d.push_back(operator_norm(blocks_[k + 1] - extend(k, blocks_[k + 1].rows())));
  return d;
}

bool TailStableSequence::is_alpha_invariant(double tol) const {
  auto d = alpha_defects();
  if (d.empty()) return true;
  // Tail = second half of the defects.
  for (std::size_t k = d.size() / 2; k + 1 < d.size(); ++k)
    if (d[k + 1] > d[k] + 1e-15) return false;
  return d.back() <= tol;
}

namespace {
void check_same_shape(const TailStableSequence& a, const TailStableSequence& b) {
  if (a.dims() != b.dims()) throw DimensionError("tail-stable sequences have different dims");
}
}  // namespace

TailStableSequence TailStableSequence::operator+(const TailStableSequence& o) const {
  check_same_shape(*this, o);
  std::vector<ComplexMatrix> b;
  for (std::size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] + o.blocks_[k]);
  return {std::move(b), lambda_ + o.lambda_};
}

TailStableSequence TailStableSequence::operator*(const TailStableSequence& o) const {
  check_same_shape(*this, o);
  std::vector<ComplexMatrix> b;
  for (std::size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] * o.blocks_[k]);
  return {std::move(b), lambda_ * o.lambda_};
}

TailStableSequence TailStableSequence::adjoint() const {
  std::vector<ComplexMatrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return {std::move(b), std::conj(lambda_)};
}

ComplexMatrix shift_F(const LevelSpec& spec) {
  const BasisLayout L = basis_layout(spec);
  const int K = spec.levels();
  const int M = spec.tail_copies();
  ComplexMatrix F(L.size(), L.size());
  for (int k = 1; k <= K; ++k) {
    const int prev = spec.dim(k - 1);
    for (int i = 1; i <= spec.dim(k); ++i) {
      const std::size_t src = L.v(k, i);
      const std::size_t dst = (k > 1 && i <= prev) ? L.v(k - 1, i) : L.w(k - 1, 1, i);
      F(dst, src) = 1.0;
    }
  }
  for (int k = 0; k < K; ++k) {
    const int lo = k == 0 ? 1 : spec.dim(k) + 1;
    for (int m = 1; m < M; ++m)
      for (int j = lo; j <= spec.dim(k + 1); ++j) F(L.w(k, m + 1, j), L.w(k, m, j)) = 1.0;
  }
  return F;
}

ComplexMatrix psi(const TailStableSequence& q, const LevelSpec& spec) {
  if (q.dims() != spec.dims()) throw DimensionError("sequence dims do not match the level spec");
  const BasisLayout L = basis_layout(spec);
  ComplexMatrix out(L.size(), L.size());
  for (int k = 1; k <= spec.levels(); ++k) out.set_block(L.v(k, 1), L.v(k, 1), q.blocks()[as_size(k - 1)]);
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L[i].kind == BasisIndex::Kind::W) out(i, i) = q.lambda();
  return out;
}

ComplexMatrix psi_tensor(const CirclePolynomial& p, const LevelSpec& spec) {
  const BasisLayout L = basis_layout(spec);
  const ComplexMatrix F = shift_F(spec);
  const ComplexMatrix Fs = F.adjoint();
  ComplexMatrix out(L.size(), L.size());
  for (const auto& [d, q] : p.terms) {
    if (d < 0) {
      for (const auto& b : q.blocks())
        if (unitarity_defect(b) > 1e-10)
          throw DomainError("negative exponent needs unitary coefficient blocks");
      if (std::abs(std::abs(q.lambda()) - 1.0) > 1e-10)
        throw DomainError("negative exponent needs a unit-modulus lambda");
    }
    ComplexMatrix pw = ComplexMatrix::identity(L.size());
    const ComplexMatrix& step = d >= 0 ? F : Fs;
    for (int e = 0; e < std::abs(d); ++e) pw = pw * step;
    out += psi(q, spec) * pw;
  }
  return out;
}

ComplexMatrix f_prime(const LevelSpec& spec) {
  const BasisLayout L = basis_layout(spec);
  ComplexMatrix out = ComplexMatrix::identity(L.size());
  for (int k = 1; k <= spec.levels(); ++k) {
    const std::size_t src = L.v(k, 1);
    out(src, src) = 0.0;
    if (k > 1) out(L.v(k - 1, 1), src) = 1.0;
  }
  return out;
}

namespace {

// Columns of `basis` (each a unit vector), rotated to diagonalize the boundary
// mass; returns those whose mass is below the threshold.
std::vector<std::vector<cplx>> interior_kernel(const ComplexMatrix& basis, const std::vector<bool>& inside,
                                               double mass_tol) {
  const auto n = static_cast<Eigen::Index>(basis.rows());
  const auto r = static_cast<Eigen::Index>(basis.cols());
  if (r == 0) return {};
  Eigen::MatrixXcd N(n, r);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < r; ++j) N(i, j) = basis(as_size(static_cast<int>(i)), as_size(static_cast<int>(j)));
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(r, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (inside[static_cast<std::size_t>(i)]) continue;
    B += N.row(i).adjoint() * N.row(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
  std::vector<std::vector<cplx>> out;
  for (Eigen::Index j = 0; j < r; ++j) {
    if (es.eigenvalues()(j) >= mass_tol) continue;
    Eigen::VectorXcd v = N * es.eigenvectors().col(j);
    out.emplace_back(v.data(), v.data() + v.size());
  }
  return out;
}

ComplexMatrix small_columns(const ComplexMatrix& m, const std::vector<double>& s, double tol) {
  std::vector<std::size_t> rows(m.rows()), cols;
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j >= s.size() || s[j] < tol) cols.push_back(j);
  return m.select(rows, cols);
}

}  // namespace

IndexReport essential_index(const ComplexMatrix& a, const LevelSpec& spec, IndexThresholds t) {
  if (!a.is_square()) throw DimensionError("essential_index needs a square operator");
  const BasisLayout L = basis_layout(spec);
  if (a.rows() != L.size())
    throw DimensionError("operator size " + std::to_string(a.rows()) + " does not match the layout size " +
                         std::to_string(L.size()));
  std::vector<bool> inside(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) inside[i] = L.interior(i, spec.buffer());

  const SvdResult s = svd(a);
  const ComplexMatrix kerA = small_columns(s.v, s.values, t.kernel_singular_value);
  const ComplexMatrix kerAs = small_columns(s.u, s.values, t.kernel_singular_value);

  IndexReport r;
  r.raw_kernel_dim = static_cast<int>(kerA.cols());
  r.raw_cokernel_dim = static_cast<int>(kerAs.cols());
  r.kernel = interior_kernel(kerA, inside, t.boundary_mass);
  r.cokernel = interior_kernel(kerAs, inside, t.boundary_mass);
  r.kernel_dim = static_cast<int>(r.kernel.size());
  r.cokernel_dim = static_cast<int>(r.cokernel.size());
  r.index = r.kernel_dim - r.cokernel_dim;
  return r;
}

double commutator_defect(const TailStableSequence& q, const LevelSpec& spec) {
  const BasisLayout L = basis_layout(spec);
  const ComplexMatrix F = shift_F(spec);
  const ComplexMatrix P = psi(q, spec);
  const ComplexMatrix C = F * P - P * F;
  std::vector<std::size_t> idx;
  const int K = spec.levels();
  const int M = spec.tail_copies();
  for (std::size_t i = 0; i < L.size(); ++i) {
    const auto& e = L[i];
    const bool keep = e.kind == BasisIndex::Kind::V ? (e.level >= 2 && e.level <= K - 1) : e.copy <= M - 1;
    if (keep) idx.push_back(i);
  }
  return operator_norm(C.select(idx, idx));
}

RankStabilization rank_stabilization(const TailStableSequence& p, double tol) {
  if (!(tol > 0.0)) throw DomainError("rank_stabilization tolerance must be positive");
  RankStabilization r;
  for (const auto& b : p.blocks()) {
    if (operator_norm(b * b - b) > tol || operator_norm(b - b.adjoint()) > tol)
      throw DomainError("rank_stabilization needs blocks that are approximately projections");
    r.ranks.push_back(rank_eps(b, tol));
  }
  const int K = static_cast<int>(r.ranks.size());
  int onset = K;
  while (onset > 1 && r.ranks[as_size(onset - 2)] == r.ranks.back()) --onset;
  // The last level alone says nothing about stability.
  if (onset > K - 1 || K < 2) throw DomainError("rank does not stabilize within the given levels");
  r.onset = onset;
  r.rank = r.ranks.back();
  return r;
}

}  // namespace asymrep
