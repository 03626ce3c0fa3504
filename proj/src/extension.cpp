#include "asymrep/extension.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "asymrep/error.hpp"
#include "asymrep/linalg.hpp"

namespace asymrep {

SuspensionFn::SuspensionFn(std::function<cplx(double)> f, std::string label, double sup_norm, double lipschitz)
    : f_(std::move(f)), label_(std::move(label)), sup_norm_(sup_norm), lipschitz_(lipschitz) {
  if (!f_) throw DomainError("suspension function is empty");
  if (std::abs(f_(0.0)) > 1e-12 || std::abs(f_(1.0)) > 1e-12)
    throw DomainError("suspension function must vanish at 0 and 1");
}

SuspensionFn SuspensionFn::poly_bump() {
  return {[](double t) { return cplx(t * (1.0 - t)); }, "bump", 0.25, 1.0};
}

SuspensionFn SuspensionFn::zero() {
  return {[](double) { return cplx(0.0); }, "zero", 0.0, 0.0};
}

SuspensionFn SuspensionFn::sine() {
  return {[](double t) { return cplx(t >= 1.0 ? 0.0 : std::sin(std::numbers::pi * t)); }, "sin", 1.0,
          std::numbers::pi};
}

SuspensionFn SuspensionFn::by_name(const std::string& name) {
  if (name == "bump" || name == "poly-bump") return poly_bump();
  if (name == "zero") return zero();
  if (name == "sin") return sine();
  throw DomainError("unknown suspension function '" + name + "' (expected poly-bump, zero or sin)");
}

namespace {

RepSequence checked_sequence(RepSequence seq, int K) {
  if (static_cast<int>(seq.size()) < K)
    throw DomainError("sequence has " + std::to_string(seq.size()) + " members, model needs " + std::to_string(K));
  for (std::size_t k = 0; k < seq.size(); ++k)
    if (seq[k].dim() != k + 1) throw DomainError("model needs a sequence with dimensions 1, 2, 3, ...");
  return seq;
}

}  // namespace

S3Model::S3Model(RepSequence seq, Character q, int K, int M)
    : seq_(checked_sequence(std::move(seq), K)),
      q_(std::move(q)),
      spec_(LevelSpec::consecutive(K, M, 1)),
      layout_(basis_layout(spec_)) {
  if (q_.values().size() != seq_[0].presentation().rank())
    throw DimensionError("character has the wrong number of generators");
}

Label S3Model::label(std::size_t index) const {
  const auto& e = layout_[index];
  if (e.kind == BasisIndex::Kind::V) return {e.level, e.component};
  return {e.component - e.copy, e.component};
}

std::optional<std::size_t> S3Model::index(Label l) const {
  const int K = levels();
  if (l.j < 1 || l.j > K) return std::nullopt;
  if (l.i >= l.j) {
    if (l.i > K) return std::nullopt;
    return layout_.v(l.i, l.j);
  }
  const int copy = l.j - l.i;
  if (copy > tail_copies()) return std::nullopt;
  return layout_.w(l.j - 1, copy, l.j);
}

ComplexMatrix S3Model::lift(const Word& a) const {
  ComplexMatrix out(layout_.size(), layout_.size());
  for (int k = 1; k <= levels(); ++k)
    out.set_block(layout_.v(k, 1), layout_.v(k, 1), evaluate(seq_[static_cast<std::size_t>(k - 1)], a));
  const cplx qa = q_(a);
  for (std::size_t i = 0; i < layout_.size(); ++i)
    if (layout_[i].kind == BasisIndex::Kind::W) out(i, i) = qa;
  return out;
}

void S3Model::check_window(int n, int m) const {
  if (n < 1 || m < 1) throw DomainError("window needs n >= 1 and m >= 1");
  if (n + m > levels())
    throw DomainError("window n+m = " + std::to_string(n + m) + " exceeds the truncation K = " +
                      std::to_string(levels()));
  if (m - 1 > tail_copies()) throw DomainError("window needs at least m-1 tail copies");
}

double approx_unit_entry(int n, int m, Label l) {
  if (l.i >= -n && l.i <= n) return 1.0;
  if (l.i > n && l.i <= n + m && l.j <= n + m) return static_cast<double>(m - l.i + n) / m;
  return 0.0;
}

ApproxUnit approx_unit(const S3Model& model, int n, int m) {
  model.check_window(n, m);
  std::vector<cplx> d(model.layout().size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = approx_unit_entry(n, m, model.label(i));
  return {n, m, DiagonalMatrix(std::move(d))};
}

WindowProjection window_projection(const S3Model& model, int n, int m) {
  model.check_window(n, m);
  WindowProjection w{n, m, {}, {}};
  for (int j = 1; j <= n + m; ++j)
    for (int i = n + 1; i <= n + m; ++i) {
      w.labels.push_back({i, j});
      w.indices.push_back(*model.index({i, j}));
    }
  return w;
}

std::pair<double, double> quasicentral_report(const S3Model& model, const ApproxUnit& e, const Word& a,
                                              const SuspensionFn& f) {
  if (e.values.dim() != model.layout().size()) throw DimensionError("approximate unit does not match the model");
  const ComplexMatrix lift = model.lift(a);
  const ComplexMatrix E = e.values.to_dense();
  const ComplexMatrix fE = diag_apply([&](double t) { return f(t); }, e.values).to_dense();
  const ComplexMatrix F = model.shift();
  return {operator_norm(E * lift - lift * E), operator_norm(fE * F - F * fE)};
}

namespace {

// Column images of a' F^d on the window, before the f(e_n) factor, split into
// rows inside the window and rows outside it.
struct WindowImage {
  ComplexMatrix inside;
  ComplexMatrix outside;
};

WindowImage window_image(const S3Model& model, const Word& a, int d, int n, int m) {
  if (d < -1 || d > 1) throw DomainError("rho_bar supports d in {-1, 0, 1}");
  const WindowProjection w = window_projection(model, n, m);
  auto window_pos = [&](Label l) -> std::optional<std::size_t> {
    if (l.i <= n || l.i > n + m || l.j < 1 || l.j > n + m) return std::nullopt;
    return static_cast<std::size_t>((l.j - 1) * m + (l.i - n - 1));
  };
  std::map<int, ComplexMatrix> sigma;
  auto sigma_at = [&](int level) -> const ComplexMatrix& {
    auto it = sigma.find(level);
    if (it == sigma.end())
      it = sigma.emplace(level, evaluate(model.sequence()[static_cast<std::size_t>(level - 1)], a)).first;
    return it->second;
  };
  const cplx qa = model.character()(a);

  std::vector<std::tuple<std::size_t, Label, cplx>> out_entries;
  std::map<std::pair<int, int>, std::size_t> out_rows;
  ComplexMatrix inside(w.dim(), w.dim());
  auto put = [&](std::size_t col, Label row, cplx v) {
    if (auto p = window_pos(row)) {
      inside(*p, col) += v;
      return;
    }
    auto key = std::make_pair(row.i, row.j);
    if (!out_rows.count(key)) out_rows.emplace(key, out_rows.size());
    out_entries.emplace_back(col, row, v);
  };

  for (std::size_t c = 0; c < w.dim(); ++c) {
    const Label src = w.labels[c];
    const Label t{src.i - d, src.j};
    if (!model.index(t)) continue;
    if (t.i >= t.j) {
      const ComplexMatrix& s = sigma_at(t.i);
      for (int r = 1; r <= t.i; ++r) {
        const cplx v = s(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(t.j - 1));
        if (v != cplx(0.0)) put(c, {t.i, r}, v);
      }
    } else {
      put(c, t, qa);
    }
  }
  ComplexMatrix outside(out_rows.size(), w.dim());
  for (const auto& [col, row, v] : out_entries) outside(out_rows.at({row.i, row.j}), col) += v;
  return {std::move(inside), std::move(outside)};
}

std::vector<cplx> window_f_values(int n, int m, const SuspensionFn& f) {
  std::vector<cplx> d;
  for (int j = 1; j <= n + m; ++j)
    for (int i = n + 1; i <= n + m; ++i) d.push_back(f(approx_unit_entry(n, m, {i, j})));
  return d;
}

std::vector<cplx> ramp_f_values(int m, const SuspensionFn& f) {
  std::vector<cplx> d;
  for (int r = 1; r <= m; ++r) d.push_back(f(static_cast<double>(m - r) / m));
  return d;
}

ComplexMatrix open_shift(int m) {
  ComplexMatrix s(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  for (int r = 1; r < m; ++r) s(static_cast<std::size_t>(r - 1), static_cast<std::size_t>(r)) = 1.0;
  return s;
}

}  // namespace

ComplexMatrix rho_bar(const S3Model& model, const Word& a, int d, const SuspensionFn& f, int n, int m) {
  WindowImage img = window_image(model, a, d, n, m);
  return scale_columns(img.inside, window_f_values(n, m, f));
}

ComplexMatrix beta_eval(int m, int d, const SuspensionFn& f) {
  if (m < 1) throw DomainError("beta_eval needs m >= 1");
  ComplexMatrix T = voiculescu_pair(m).first;
  ComplexMatrix step = d >= 0 ? T : T.adjoint();
  ComplexMatrix pw = ComplexMatrix::identity(static_cast<std::size_t>(m));
  for (int e = 0; e < std::abs(d); ++e) pw = pw * step;
  std::vector<cplx> grid;
  for (int r = 1; r <= m; ++r) grid.push_back(f(static_cast<double>(r) / m));
  return scale_columns(pw, grid);
}

ComplexMatrix sigma_hat(const S3Model& model, const Word& a, int n, int m) {
  model.check_window(n, m);
  const AlmostRep& s = model.sequence()[static_cast<std::size_t>(n - 1)];
  return evaluate(with_character(s, model.character(), static_cast<std::size_t>(n + m)), a);
}

double shift_translation_gap(int m, const SuspensionFn& f) {
  if (m < 1) throw DomainError("shift_translation_gap needs m >= 1");
  const auto D = ramp_f_values(m, f);
  return operator_norm(scale_columns(open_shift(m) - voiculescu_pair(m).first, D));
}

GapReport equivalence_gap(const S3Model& model, const Word& a, const SuspensionFn& f, int n, int m) {
  WindowImage img = window_image(model, a, 1, n, m);
  const auto fw = window_f_values(n, m, f);
  const ComplexMatrix R = scale_columns(img.inside, fw);
  const ComplexMatrix S = sigma_hat(model, a, n, m);
  const ComplexMatrix beta = beta_eval(m, 1, f);
  const auto Dm = ramp_f_values(m, f);
  const ComplexMatrix T = voiculescu_pair(m).first;
  const ComplexMatrix shD = scale_columns(open_shift(m), Dm);
  const ComplexMatrix TD = scale_columns(T, Dm);

  GapReport g;
  g.n = n;
  g.m = m;
  g.gap = operator_norm(R - kron(S, beta));
  g.window = operator_norm(scale_columns(img.outside, fw));
  g.block_drift = operator_norm(R - kron(S, shD));
  g.shift = operator_norm(shD - TD);
  g.grid_mismatch = operator_norm(TD - beta);
  g.sigma_norm = operator_norm(S);
  g.audit_bound = g.block_drift + g.sigma_norm * (g.shift + g.grid_mismatch);
  g.audit_ok = g.gap <= g.audit_bound + 1e-9;
  return g;
}

namespace {

double drift_at(const RepSequence& seq, const FiniteSubset& F, int n, int k) {
  const AlmostRep& base = seq[static_cast<std::size_t>(n - 1)];
  const AlmostRep& other = seq[static_cast<std::size_t>(n - 1 + k)];
  const AlmostRep embedded = corner_embed(base, other.dim());
  double worst = 0.0;
  for (const auto& g : F.words()) worst = std::max(worst, operator_norm(evaluate(embedded, g) - evaluate(other, g)));
  return worst;
}

}  // namespace

double windowed_drift(const RepSequence& seq, const FiniteSubset& F, int n, int m) {
  if (n < 1 || m < 0) throw DomainError("windowed_drift needs n >= 1 and m >= 0");
  if (static_cast<std::size_t>(n + m) > seq.size()) throw DomainError("sequence too short for the window");
  double worst = 0.0;
  for (int k = 1; k <= m; ++k) worst = std::max(worst, drift_at(seq, F, n, k));
  return worst;
}

std::vector<int> m_schedule(const RepSequence& seq, const FiniteSubset& F, const std::vector<int>& n_values,
                            const ScheduleOptions& opts) {
  if (n_values.empty()) throw DomainError("m_schedule needs at least one n");
  std::vector<int> out;
  for (int n : n_values) {
    if (n < 1) throw DomainError("m_schedule needs n >= 1");
    const double tau = opts.tau0 / std::sqrt(static_cast<double>(n));
    const int cap = opts.cap(n);
    int best = 0;
    double worst = 0.0;
    for (int k = 1; k <= cap; ++k) {
      if (static_cast<std::size_t>(n + k) > seq.size())
        throw DomainError("sequence too short: m_schedule needs member " + std::to_string(n + k));
      worst = std::max(worst, drift_at(seq, F, n, k));
      if (worst > tau) break;
      best = k;
    }
    if (best < 1) throw DomainError("no admissible m for n = " + std::to_string(n));
    out.push_back(best);
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] < out[i - 1]) throw DomainError("m schedule is not nondecreasing");
  if (out.size() > 1 && out.back() <= out.front())
    throw DomainError("m schedule does not grow over the tested range");
  return out;
}

}  // namespace asymrep
