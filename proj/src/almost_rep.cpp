#include "asymrep/almost_rep.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "asymrep/error.hpp"
#include "asymrep/linalg.hpp"

namespace asymrep {

PresentationPtr z2_presentation() {
  static const PresentationPtr p =
      std::make_shared<const GroupPresentation>(parse_presentation("<a,b|[a,b]>"));
  return p;
}

PresentationPtr z_presentation() {
  static const PresentationPtr p = std::make_shared<const GroupPresentation>(parse_presentation("<a|>"));
  return p;
}

AlmostRep::AlmostRep(PresentationPtr presentation, std::vector<ComplexMatrix> images,
                     double unitarity_tol)
    : presentation_(std::move(presentation)), images_(std::move(images)) {
  if (!presentation_) throw DomainError("AlmostRep needs a presentation");
  if (images_.size() != presentation_->rank())
    throw DimensionError("AlmostRep: " + std::to_string(images_.size()) + " images for " +
                         std::to_string(presentation_->rank()) + " generators");
  if (images_.empty()) throw DomainError("AlmostRep needs at least one generator");
  dim_ = images_.front().rows();
  if (dim_ == 0) throw DimensionError("AlmostRep dimension must be positive");
  for (const auto& m : images_) {
    if (!m.is_square() || m.rows() != dim_) throw DimensionError("AlmostRep images must be n x n");
    if (unitarity_defect(m) > unitarity_tol) throw DomainError("AlmostRep image is not unitary");
  }
}

RepSequence::RepSequence(std::vector<AlmostRep> reps) : reps_(std::move(reps)) {
  for (std::size_t k = 1; k < reps_.size(); ++k) {
    if (reps_[k].presentation_ptr() != reps_[0].presentation_ptr())
      throw DomainError("RepSequence members must share one presentation");
    if (reps_[k].dim() <= reps_[k - 1].dim())
      throw DomainError("RepSequence dimensions must be strictly increasing");
  }
}

std::vector<int> RepSequence::dims() const {
  std::vector<int> d;
  for (const auto& r : reps_) d.push_back(static_cast<int>(r.dim()));
  return d;
}

Character::Character(std::vector<cplx> values) : values_(std::move(values)) {
  for (cplx v : values_)
    if (std::abs(std::abs(v) - 1.0) > 1e-12) throw DomainError("character values must have modulus 1");
}

cplx Character::operator()(const Word& w) const {
  cplx out = 1.0;
  for (const auto& l : w.letters()) {
    cplx v = values_.at(l.generator);
    out *= l.sign > 0 ? v : std::conj(v);
  }
  return out;
}

ComplexMatrix evaluate(const AlmostRep& rep, const Word& w) {
  ComplexMatrix out = ComplexMatrix::identity(rep.dim());
  for (const auto& l : w.letters()) {
    if (l.generator >= rep.presentation().rank())
      throw DomainError("word uses an undeclared generator");
    const ComplexMatrix& img = rep.image(l.generator);
    out = l.sign > 0 ? out * img : out * img.adjoint();
  }
  return out;
}

namespace {
void check_subset(const GroupPresentation& p, const FiniteSubset& F) {
  if (F.rank() != p.rank() || F.normal_form() != p.normal_form)
    throw DomainError("finite subset was built over a different presentation");
  if (F.size() == 0) throw DomainError("finite subset is empty");
}

ComplexMatrix embed_block(const ComplexMatrix& a, std::size_t N, cplx fill) {
  ComplexMatrix out(N, N);
  out.set_block(0, 0, a);
  for (std::size_t i = a.rows(); i < N; ++i) out(i, i) = fill;
  return out;
}
}  // namespace

DefectReport defect(const AlmostRep& rep, const FiniteSubset& F, ProductPolicy policy) {
  const auto& P = rep.presentation();
  check_subset(P, F);
  std::vector<ComplexMatrix> images;
  images.reserve(F.size());
  for (const auto& w : F.words()) images.push_back(evaluate(rep, w));

  DefectReport r;
  r.subset = std::make_shared<const FiniteSubset>(F);
  bool have = false;
  for (std::size_t i = 0; i < F.size(); ++i) {
    for (std::size_t j = 0; j < F.size(); ++j) {
      Word gh = word_multiply(F.words()[i], F.words()[j], P);
      auto idx = F.index_of(gh);
      if (policy == ProductPolicy::product_in_subset && !idx) continue;
      ComplexMatrix lhs = idx ? images[*idx] : evaluate(rep, gh);
      double e = operator_norm(lhs - images[i] * images[j]);
      if (!have || e > r.epsilon) {
        have = true;
        r.epsilon = e;
        r.g = F.words()[i];
        r.h = F.words()[j];
        r.gh = gh;
      }
    }
  }
  return r;
}

AlmostRep corner_embed(const AlmostRep& rep, std::size_t N) {
  return with_character(rep, Character::trivial(rep.presentation().rank()), N);
}

AlmostRep with_character(const AlmostRep& rep, const Character& q, std::size_t N) {
  if (N < rep.dim()) throw DomainError("target dimension is smaller than the representation");
  if (q.values().size() != rep.presentation().rank())
    throw DimensionError("character has the wrong number of generators");
  std::vector<ComplexMatrix> images;
  for (std::size_t g = 0; g < rep.images().size(); ++g)
    images.push_back(embed_block(rep.image(g), N, q.values()[g]));
  return AlmostRep(rep.presentation_ptr(), std::move(images));
}

std::vector<double> drift(const RepSequence& seq, const FiniteSubset& F) {
  if (seq.size() < 2) throw DomainError("drift needs at least two representations");
  check_subset(seq[0].presentation(), F);
  std::vector<double> d;
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
    const std::size_t N = seq[k + 1].dim();
    if (seq[k].dim() > N) throw DimensionError("dimension mismatch after embedding");
    double worst = 0.0;
    for (const auto& g : F.words()) {
      ComplexMatrix a = embed_block(evaluate(seq[k], g), N, 1.0);
      worst = std::max(worst, operator_norm(a - evaluate(seq[k + 1], g)));
    }
    d.push_back(worst);
  }
  return d;
}

AsymptoticReport asymptotic_report(const RepSequence& seq, const FiniteSubset& F,
                                   AsymptoticThresholds t) {
  if (seq.size() < 3) throw DomainError("asymptotic_report needs at least three representations");
  AsymptoticReport r;
  for (const auto& rep : seq.reps()) r.defects.push_back(defect(rep, F).epsilon);
  r.drifts = drift(seq, F);
  auto decays = [&](const std::vector<double>& v) {
    return v.back() <= t.ratio * v.front() && v.back() < t.cap;
  };
  r.defects_pass = decays(r.defects);
  r.drifts_pass = decays(r.drifts);
  r.pass = r.defects_pass && r.drifts_pass;
  return r;
}

namespace {
// e^{2 pi i j/m} with j reduced mod m, so j = m gives exactly 1.
cplx root_of_unity(int j, int m) {
  const int r = ((j % m) + m) % m;
  return std::polar(1.0, 2.0 * std::numbers::pi * r / m);
}
}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> voiculescu_pair(int m) {
  if (m < 1) throw DomainError("Voiculescu matrices need m >= 1");
  const auto n = static_cast<std::size_t>(m);
  ComplexMatrix T(n, n), U(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    T((j + n - 1) % n, j) = 1.0;
    U(j, j) = root_of_unity(static_cast<int>(j) + 1, m);
  }
  return {std::move(T), std::move(U)};
}

AlmostRep voiculescu_rep(int m) {
  auto [T, U] = voiculescu_pair(m);
  return AlmostRep(z2_presentation(), {std::move(T), std::move(U)});
}

AlmostRep fourier_zn_rep(int n) {
  if (n < 1) throw DomainError("fourier_zn_rep needs n >= 1");
  std::vector<cplx> d;
  for (int j = 1; j <= n; ++j) d.push_back(root_of_unity(j, n));
  return AlmostRep(z_presentation(), {ComplexMatrix::diagonal(d)});
}

}  // namespace asymrep
