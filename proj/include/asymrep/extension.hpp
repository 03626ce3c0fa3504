#pragma once

// The shifted-window model: basis v_i^{(j)} on top of the level layout with
// n_k = k, the diagonal approximate unit e_n, the window K_n, the compressed
// representation rho_bar and its comparison with sigma_hat (x) beta.
//
// Labels: v_i^{(j)} with i >= j is component j of V_i; with i < j it is
// component j of W_{j-1} (W_0 when j = 1), copy j - i. F v_i^{(j)} = v_{i-1}^{(j)}.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "asymrep/almost_rep.hpp"
#include "asymrep/calkin_model.hpp"
#include "asymrep/matrix.hpp"

namespace asymrep {

class SuspensionFn {
 public:
  /// Throws DomainError unless |f(0)|, |f(1)| <= 1e-12.
  SuspensionFn(std::function<cplx(double)> f, std::string label, double sup_norm, double lipschitz);

  /// t(1 - t): sup 1/4, Lipschitz 1.
  static SuspensionFn poly_bump();
  static SuspensionFn zero();
  /// sin(pi t): sup 1, Lipschitz pi.
  static SuspensionFn sine();
  /// "poly-bump" (or "bump"), "zero" or "sin".
  static SuspensionFn by_name(const std::string& name);

  cplx operator()(double t) const { return f_(t); }
  const std::string& label() const noexcept { return label_; }
  double sup_norm() const noexcept { return sup_norm_; }
  double lipschitz() const noexcept { return lipschitz_; }

 private:
  std::function<cplx(double)> f_;
  std::string label_;
  double sup_norm_;
  double lipschitz_;
};

struct Label {
  int i;
  int j;
  bool operator==(const Label&) const = default;
};

struct ApproxUnit {
  int n = 0;
  int m = 0;
  DiagonalMatrix values;  // on the model layout
};

/// Positions of {v_i^{(j)} : n < i <= n+m, 1 <= j <= n+m}, j outer and i inner.
struct WindowProjection {
  int n = 0;
  int m = 0;
  std::vector<Label> labels;
  std::vector<std::size_t> indices;
  std::size_t dim() const noexcept { return indices.size(); }
};

class S3Model {
 public:
  /// seq dims must be 1, 2, ..., K' with K' >= K; q has one value per generator.
  /// Levels 1..K and W copies 1..M are kept (K >= 3, M >= 2).
  S3Model(RepSequence seq, Character q, int K, int M);

  const RepSequence& sequence() const noexcept { return seq_; }
  const Character& character() const noexcept { return q_; }
  const LevelSpec& spec() const noexcept { return spec_; }
  const BasisLayout& layout() const noexcept { return layout_; }
  int levels() const noexcept { return spec_.levels(); }
  int tail_copies() const noexcept { return spec_.tail_copies(); }

  Label label(std::size_t index) const;
  std::optional<std::size_t> index(Label l) const;

  /// Level-wise lift: sigma_i(a) on V_i, q(a) on every W vector.
  ComplexMatrix lift(const Word& a) const;
  ComplexMatrix shift() const { return shift_F(spec_); }

  /// Throws DomainError when n+m > K, m - 1 > M or n, m < 1.
  void check_window(int n, int m) const;

 private:
  RepSequence seq_;
  Character q_;
  LevelSpec spec_;
  BasisLayout layout_;
};

/// a_{n,i}^{(j)}: 1 for -n <= i <= n; (m-i+n)/m for n < i <= n+m and j <= n+m; 0 otherwise.
double approx_unit_entry(int n, int m, Label l);
ApproxUnit approx_unit(const S3Model& model, int n, int m);
WindowProjection window_projection(const S3Model& model, int n, int m);

/// (||[e_n, a']||, ||[f(e_n), F]||).
std::pair<double, double> quasicentral_report(const S3Model& model, const ApproxUnit& e, const Word& a,
                                              const SuspensionFn& f);

/// P_n a' F^d P_n f(e_n) on K_n, d in {-1, 0, 1}.
ComplexMatrix rho_bar(const S3Model& model, const Word& a, int d, const SuspensionFn& f, int n, int m);

/// T_m^d diag(f(r/m)), r = 1..m.
ComplexMatrix beta_eval(int m, int d, const SuspensionFn& f);

/// with_character(sigma_n, q, n+m) evaluated at a.
ComplexMatrix sigma_hat(const S3Model& model, const Word& a, int n, int m);

/// ||(S - T) diag(f(1 - r/m))|| for the non-cyclic shift S and the cyclic T_m:
/// the per-column value of ||P_n F P_n f(e_n) - T_m f(e_n)||.
double shift_translation_gap(int m, const SuspensionFn& f);

struct GapReport {
  int n = 0;
  int m = 0;
  double gap = 0.0;
  double window = 0.0;        // ||(1 - P_n) a' F P_n f(e_n)||
  double block_drift = 0.0;   // ||rho_bar - (S (x) 1) P F P f(e_n)||
  double shift = 0.0;         // ||P F P f(e_n) - (1 (x) T_m) f(e_n)||
  double grid_mismatch = 0.0; // ||(1 (x) T_m) f(e_n) - 1 (x) beta||
  double sigma_norm = 0.0;    // ||S||, S = sigma_hat(a)
  double audit_bound = 0.0;   // block_drift + sigma_norm * (shift + grid_mismatch)
  bool audit_ok = false;
};

GapReport equivalence_gap(const S3Model& model, const Word& a, const SuspensionFn& f, int n, int m);

/// max over a in F and 0 <= k <= m of ||sigma_n(a) (+) 1 - sigma_{n+k}(a)||.
double windowed_drift(const RepSequence& seq, const FiniteSubset& F, int n, int m);

struct ScheduleOptions {
  double tau0 = 3.14159265358979323846;          // tau(n) = tau0 / sqrt(n)
  std::function<int(int)> cap = [](int n) { return n; };
};

/// For each n, the largest m <= cap(n) with windowed drift <= tau(n).
std::vector<int> m_schedule(const RepSequence& seq, const FiniteSubset& F, const std::vector<int>& n_values,
                            const ScheduleOptions& opts = {});

}  // namespace asymrep
