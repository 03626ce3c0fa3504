#pragma once

// Almost representations sigma: pi -> U(n), their multiplicativity defect on a
// finite subset, drift between consecutive members of a sequence, and the
// Voiculescu / Fourier families used throughout.

#include <memory>
#include <utility>
#include <vector>

#include "asymrep/matrix.hpp"
#include "asymrep/presentation.hpp"

namespace asymrep {

using PresentationPtr = std::shared_ptr<const GroupPresentation>;

/// <a,b | [a,b]>, abelian normal form.
PresentationPtr z2_presentation();
/// <a | >.
PresentationPtr z_presentation();

class AlmostRep {
 public:
  static constexpr double kDefaultUnitarityTol = 1e-10;

  /// One n x n image per generator, each unitary within `unitarity_tol`.
  AlmostRep(PresentationPtr presentation, std::vector<ComplexMatrix> images,
            double unitarity_tol = kDefaultUnitarityTol);

  const GroupPresentation& presentation() const noexcept { return *presentation_; }
  const PresentationPtr& presentation_ptr() const noexcept { return presentation_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& images() const noexcept { return images_; }
  const ComplexMatrix& image(std::size_t generator) const { return images_.at(generator); }

 private:
  PresentationPtr presentation_;
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> images_;
};

/// Members share one presentation and have strictly increasing dimensions.
class RepSequence {
 public:
  explicit RepSequence(std::vector<AlmostRep> reps);

  std::size_t size() const noexcept { return reps_.size(); }
  const AlmostRep& operator[](std::size_t k) const { return reps_.at(k); }
  const std::vector<AlmostRep>& reps() const noexcept { return reps_; }
  std::vector<int> dims() const;

 private:
  std::vector<AlmostRep> reps_;
};

/// Homomorphism to C: one unit-modulus value per generator.
class Character {
 public:
  explicit Character(std::vector<cplx> values);
  static Character trivial(std::size_t rank) { return Character(std::vector<cplx>(rank, 1.0)); }

  const std::vector<cplx>& values() const noexcept { return values_; }
  cplx operator()(const Word& w) const;

 private:
  std::vector<cplx> values_;
};

/// Which pairs enter the defect supremum.
enum class ProductPolicy {
  /// g, h in F; gh is evaluated through the normal form whether or not it lies in F.
  any_product,
  /// g, h and gh all in F.
  product_in_subset,
};

struct DefectReport {
  double epsilon = 0.0;
  Word g, h, gh;
  std::shared_ptr<const FiniteSubset> subset;
};

/// Ordered product of generator images; negative letters use the adjoint.
ComplexMatrix evaluate(const AlmostRep& rep, const Word& w);

DefectReport defect(const AlmostRep& rep, const FiniteSubset& F,
                    ProductPolicy policy = ProductPolicy::any_product);

/// Images in the upper-left corner of U(N), identity on the complement.
AlmostRep corner_embed(const AlmostRep& rep, std::size_t N);

/// Upper-left corner = rep image, complement diagonal = character value.
AlmostRep with_character(const AlmostRep& rep, const Character& q, std::size_t N);

/// d_k = max_{g in F} ||embed(sigma_k)(g) - sigma_{k+1}(g)||.
std::vector<double> drift(const RepSequence& seq, const FiniteSubset& F);

struct AsymptoticThresholds {
  double ratio = 0.5;  // last <= ratio * first
  double cap = 0.5;    // last < cap
};

struct AsymptoticReport {
  std::vector<double> defects;
  std::vector<double> drifts;
  bool defects_pass = false;
  bool drifts_pass = false;
  bool pass = false;
};

AsymptoticReport asymptotic_report(const RepSequence& seq, const FiniteSubset& F,
                                   AsymptoticThresholds thresholds = {});

/// T_m: cyclic translation T e_j = e_{j-1 mod m}; U_m = diag(w^j), w = e^{2 pi i/m},
/// j = 1..m. T U = w U T.
std::pair<ComplexMatrix, ComplexMatrix> voiculescu_pair(int m);

/// Z^2 = <a,b|[a,b]> with a -> T_m, b -> U_m.
AlmostRep voiculescu_rep(int m);

/// Z = <a|> with a -> diag(e^{2 pi i j/n}), j = 1..n.
AlmostRep fourier_zn_rep(int n);

}  // namespace asymrep
