#include "asymrep/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asymrep/error.hpp"
#include "asymrep/linalg.hpp"

namespace asymrep {

BlockOperator::BlockOperator(std::vector<ComplexMatrix> blocks, cplx scalar_tail)
    : blocks_(std::move(blocks)), scalar_tail_(scalar_tail) {
  if (blocks_.empty()) throw DomainError("block operator needs at least one level");
  for (const auto& b : blocks_)
    if (!b.is_square() || b.rows() == 0) throw DimensionError("block operator levels must be square and nonempty");
}

BlockOperator BlockOperator::identity(std::span<const int> dims) {
  std::vector<ComplexMatrix> b;
  for (int d : dims) b.push_back(ComplexMatrix::identity(static_cast<std::size_t>(d)));
  return BlockOperator(std::move(b), 1.0);
}

std::vector<int> BlockOperator::dims() const {
  std::vector<int> d;
  for (const auto& b : blocks_) d.push_back(static_cast<int>(b.rows()));
  return d;
}

namespace {
void check_same_levels(const BlockOperator& a, const BlockOperator& b) {
  if (a.dims() != b.dims()) throw DimensionError("block operators have different level dimensions");
}
}  // namespace

BlockOperator BlockOperator::operator*(const BlockOperator& o) const {
  check_same_levels(*this, o);
  std::vector<ComplexMatrix> b;
  for (std::size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] * o.blocks_[k]);
  return BlockOperator(std::move(b), scalar_tail_ * o.scalar_tail_);
}

BlockOperator BlockOperator::operator-(const BlockOperator& o) const {
  check_same_levels(*this, o);
  std::vector<ComplexMatrix> b;
  for (std::size_t k = 0; k < blocks_.size(); ++k) b.push_back(blocks_[k] - o.blocks_[k]);
  return BlockOperator(std::move(b), scalar_tail_ - o.scalar_tail_);
}

BlockOperator BlockOperator::inverse() const {
  if (std::abs(scalar_tail_) < 1e-12) throw NumericalError("block operator tail scalar is not invertible");
  std::vector<ComplexMatrix> b;
  for (const auto& m : blocks_) b.push_back(asymrep::inverse(m));
  return BlockOperator(std::move(b), 1.0 / scalar_tail_);
}

bool BlockOperator::unitary(double tol) const {
  if (std::abs(std::abs(scalar_tail_) - 1.0) > tol) return false;
  return std::all_of(blocks_.begin(), blocks_.end(), [&](const ComplexMatrix& m) { return unitarity_defect(m) <= tol; });
}

double BlockOperator::sup_norm(std::size_t from) const {
  double s = std::abs(scalar_tail_);
  for (std::size_t k = from; k < blocks_.size(); ++k) s = std::max(s, operator_norm(blocks_[k]));
  return s;
}

namespace {

std::vector<BlockOperator> inverses_of(const std::vector<BlockOperator>& gens) {
  std::vector<BlockOperator> out;
  for (const auto& g : gens) out.push_back(g.inverse());
  return out;
}

void check_generators(const GroupPresentation& P, const std::vector<BlockOperator>& gens) {
  if (gens.size() != P.rank())
    throw DimensionError("expected " + std::to_string(P.rank()) + " generator images, got " +
                         std::to_string(gens.size()));
  for (const auto& g : gens)
    if (g.dims() != gens.front().dims()) throw DimensionError("generator images have different level dimensions");
}

BlockOperator word_product(const std::vector<BlockOperator>& gens, const std::vector<BlockOperator>& invs,
                           const Word& w) {
  BlockOperator out = BlockOperator::identity(gens.front().dims());
  for (const auto& l : w.letters()) {
    if (l.generator >= gens.size()) throw DomainError("word uses an undeclared generator");
    out = out * (l.sign > 0 ? gens[l.generator] : invs[l.generator]);
  }
  return out;
}

}  // namespace

EpsTrivialization::EpsTrivialization(PresentationPtr presentation, std::vector<BlockOperator> generators,
                                     double epsilon, int window, double tail_drift)
    : presentation_(std::move(presentation)),
      generators_(std::move(generators)),
      epsilon_(epsilon),
      window_(window),
      tail_drift_(tail_drift) {
  if (!presentation_) throw DomainError("trivialization needs a presentation");
  check_generators(*presentation_, generators_);
  if (window_ < 0) throw DomainError("window must be nonnegative");
  if (!(epsilon_ >= 0.0)) throw DomainError("epsilon must be nonnegative");
  inverses_ = inverses_of(generators_);
}

BlockOperator EpsTrivialization::operator()(const Word& w) const { return word_product(generators_, inverses_, w); }

EpsTrivialization from_asymptotic(const RepSequence& seq, int n, const FiniteSubset& F) {
  if (n < 1 || static_cast<std::size_t>(n) > seq.size())
    throw DomainError("from_asymptotic: n = " + std::to_string(n) + " is outside 1.." + std::to_string(seq.size()));
  const auto& P = seq[0].presentation_ptr();
  const auto first = static_cast<std::size_t>(n - 1);
  std::vector<BlockOperator> gens;
  for (std::size_t g = 0; g < P->rank(); ++g) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t k = 0; k < seq.size(); ++k)
      blocks.push_back(k < first ? ComplexMatrix::identity(seq[k].dim()) : seq[k].image(g));
    gens.emplace_back(std::move(blocks), 1.0);
  }
  double eps = 0.0;
  for (std::size_t k = first; k < seq.size(); ++k) eps = std::max(eps, defect(seq[k], F).epsilon);
  double tail = 0.0;
  if (seq.size() - first >= 2) {
    std::vector<AlmostRep> rest(seq.reps().begin() + static_cast<std::ptrdiff_t>(first), seq.reps().end());
    for (double d : drift(RepSequence(std::move(rest)), F)) tail += d;
  }
  return EpsTrivialization(P, std::move(gens), eps, n, tail);
}

double trivialization_defect(const EpsTrivialization& tau, const FiniteSubset& F) {
  const auto& P = tau.presentation();
  if (F.rank() != P.rank() || F.normal_form() != P.normal_form)
    throw DomainError("finite subset was built over a different presentation");
  std::vector<BlockOperator> images;
  for (const auto& w : F.words()) images.push_back(tau(w));
  double worst = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i)
    for (std::size_t j = 0; j < F.size(); ++j) {
      const Word gh = word_multiply(F.words()[i], F.words()[j], P);
      const BlockOperator lhs = tau(gh);
      worst = std::max(worst, (lhs - images[i] * images[j]).sup_norm());
    }
  return worst;
}

CalkinWindowRep::CalkinWindowRep(PresentationPtr presentation, std::vector<BlockOperator> generators, int window,
                                 LevelSpec spec)
    : presentation_(std::move(presentation)),
      generators_(std::move(generators)),
      window_(window),
      spec_(std::move(spec)) {
  if (!presentation_) throw DomainError("Calkin representation needs a presentation");
  check_generators(*presentation_, generators_);
  if (generators_.front().dims() != spec_.dims())
    throw DimensionError("generator levels do not match the shift's level spec");
  if (window_ < 0) throw DomainError("window must be nonnegative");
  inverses_ = inverses_of(generators_);
}

BlockOperator CalkinWindowRep::operator()(const Word& g) const { return word_product(generators_, inverses_, g); }

CalkinWindowRep calkin_rep_from_sequence(const RepSequence& seq, int window, int tail_copies, int buffer) {
  const auto& P = seq[0].presentation_ptr();
  std::vector<BlockOperator> gens;
  for (std::size_t g = 0; g < P->rank(); ++g) {
    std::vector<ComplexMatrix> blocks;
    for (const auto& r : seq.reps()) blocks.push_back(r.image(g));
    gens.emplace_back(std::move(blocks), 1.0);
  }
  return CalkinWindowRep(P, std::move(gens), window, LevelSpec(seq.dims(), tail_copies, buffer));
}

double group_law_defect(const CalkinWindowRep& rho, const FiniteSubset& F) {
  const auto& P = rho.presentation();
  if (F.rank() != P.rank() || F.normal_form() != P.normal_form)
    throw DomainError("finite subset was built over a different presentation");
  const auto from = static_cast<std::size_t>(rho.window());
  if (from >= rho.dims().size()) throw DomainError("window covers every level; nothing to compare");
  double worst = 0.0;
  for (const auto& g : F.words())
    for (const auto& h : F.words()) {
      const BlockOperator diff = rho(word_multiply(g, h, P)) - rho(g) * rho(h);
      worst = std::max(worst, diff.sup_norm(from));
    }
  return worst;
}

double shift_commutation_defect(const CalkinWindowRep& rho, const Word& g) {
  const BlockOperator b = rho(g);
  return commutator_defect(TailStableSequence(b.blocks(), b.scalar_tail()), rho.spec());
}

double symbol_match(const EpsTrivialization& tau, const CalkinWindowRep& rho, const Word& g) {
  if (tau.dims() != rho.dims()) throw DimensionError("trivialization and representation have different levels");
  const auto K = tau.dims().size();
  const auto from = static_cast<std::size_t>(std::max(tau.window(), rho.window()));
  if (from >= K) throw DomainError("window >= K: no tail levels to compare");
  const BlockOperator a = tau(g);
  const BlockOperator b = rho(g);
  double worst = 0.0;
  for (std::size_t k = from; k < K; ++k) worst = std::max(worst, operator_norm(a.block(k) - b.block(k)));
  return worst;
}

CocycleReport transition_cocycle_defect(const EpsTrivialization& tau, const Word& g, const Word& h) {
  const auto& P = tau.presentation();
  const BlockOperator tg = tau(g);
  const BlockOperator th = tau(h);
  const BlockOperator tgh = tau(word_multiply(g, h, P));
  const BlockOperator th_inv = th.inverse();
  CocycleReport r;
  r.defect = (tgh * th_inv - tg).sup_norm();
  const double eps = (tgh - tg * th).sup_norm();
  r.bound = eps * th_inv.sup_norm() + 1e-9;
  return r;
}

}  // namespace asymrep
