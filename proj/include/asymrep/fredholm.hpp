#pragma once

// Level-wise operators, epsilon-trivializations built from asymptotic
// representations, window-supported Calkin representations and the
// transition cocycle check. "Compact" means supported on levels <= window.

#include <vector>

#include "asymrep/almost_rep.hpp"
#include "asymrep/calkin_model.hpp"
#include "asymrep/matrix.hpp"

namespace asymrep {

class BlockOperator {
 public:
  BlockOperator(std::vector<ComplexMatrix> blocks, cplx scalar_tail = 1.0);

  static BlockOperator identity(std::span<const int> dims);

  const std::vector<ComplexMatrix>& blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t k) const { return blocks_.at(k); }
  cplx scalar_tail() const noexcept { return scalar_tail_; }
  std::size_t levels() const noexcept { return blocks_.size(); }
  std::vector<int> dims() const;

  BlockOperator operator*(const BlockOperator& o) const;
  BlockOperator operator-(const BlockOperator& o) const;
  /// Per-level inverse. Throws NumericalError on a (near-)singular block.
  BlockOperator inverse() const;
  /// Per-level unitary check.
  bool unitary(double tol = 1e-10) const;

  /// max(max_k ||A_k||, |tail|), optionally over levels k > from (1-based) only.
  double sup_norm(std::size_t from = 0) const;

 private:
  std::vector<ComplexMatrix> blocks_;
  cplx scalar_tail_;
};

class EpsTrivialization {
 public:
  EpsTrivialization(PresentationPtr presentation, std::vector<BlockOperator> generators, double epsilon,
                    int window, double tail_drift = 0.0);

  const GroupPresentation& presentation() const noexcept { return *presentation_; }
  const std::vector<BlockOperator>& generators() const noexcept { return generators_; }
  double epsilon() const noexcept { return epsilon_; }
  int window() const noexcept { return window_; }
  double tail_drift() const noexcept { return tail_drift_; }
  std::vector<int> dims() const { return generators_.front().dims(); }

  /// Ordered product; negative letters use the per-level inverse.
  BlockOperator operator()(const Word& w) const;

 private:
  PresentationPtr presentation_;
  std::vector<BlockOperator> generators_;
  std::vector<BlockOperator> inverses_;
  double epsilon_;
  int window_;
  double tail_drift_;
};

/// tau(g) = (1, ..., 1, sigma_n(g), sigma_{n+1}(g), ...), n is 1-based.
/// epsilon = max_{k >= n} defect(sigma_k, F); tail_drift = sum_{k >= n} d_k.
EpsTrivialization from_asymptotic(const RepSequence& seq, int n, const FiniteSubset& F);

/// max over g, h in F of sup_k ||tau(gh)_k - tau(g)_k tau(h)_k||.
double trivialization_defect(const EpsTrivialization& tau, const FiniteSubset& F);

/// rho(g; 0) level-wise up to a window; rho(0; u) is the shift of the level model.
class CalkinWindowRep {
 public:
  CalkinWindowRep(PresentationPtr presentation, std::vector<BlockOperator> generators, int window,
                  LevelSpec spec);

  const GroupPresentation& presentation() const noexcept { return *presentation_; }
  int window() const noexcept { return window_; }
  const LevelSpec& spec() const noexcept { return spec_; }
  std::vector<int> dims() const { return generators_.front().dims(); }

  BlockOperator operator()(const Word& g) const;
  ComplexMatrix shift() const { return shift_F(spec_); }

 private:
  PresentationPtr presentation_;
  std::vector<BlockOperator> generators_;
  std::vector<BlockOperator> inverses_;
  int window_;
  LevelSpec spec_;
};

/// Generators sigma_k(g) on every level, window as given, shift on (dims, M, b).
CalkinWindowRep calkin_rep_from_sequence(const RepSequence& seq, int window, int tail_copies, int buffer);

/// max over g, h in F of the sup over levels beyond the window of ||rho(gh) - rho(g) rho(h)||.
double group_law_defect(const CalkinWindowRep& rho, const FiniteSubset& F);

/// ||P_int [F, psi(rho(g))] P_int|| with rho(g) read as a tail-stable sequence.
double shift_commutation_defect(const CalkinWindowRep& rho, const Word& g);

/// sup over levels k > max(windows) of ||tau(g)_k - rho(g;0)_k||.
double symbol_match(const EpsTrivialization& tau, const CalkinWindowRep& rho, const Word& g);

struct CocycleReport {
  double defect = 0.0;  // sup_k ||tau(gh) tau(h)^{-1} - tau(g)||
  double bound = 0.0;   // eps(g, h) * max_k ||tau(h)_k^{-1}|| + 1e-9
};

CocycleReport transition_cocycle_defect(const EpsTrivialization& tau, const Word& g, const Word& h);

}  // namespace asymrep
