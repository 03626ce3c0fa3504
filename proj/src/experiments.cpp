#include "asymrep/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <map>
#include <numbers>

#include "asymrep/almost_rep.hpp"
#include "asymrep/calkin_model.hpp"
#include "asymrep/error.hpp"
#include "asymrep/extension.hpp"
#include "asymrep/fredholm.hpp"

namespace asymrep {

namespace {

int parse_int(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw DomainError("bad sweep '" + whole + "': '" + s + "' is not an integer");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto p = s.find(sep, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw DomainError("bad sweep '" + text + "': expected name=values");
  Sweep s{text.substr(0, eq), {}};
  const std::string body = text.substr(eq + 1);
  if (body.find(':') != std::string::npos) {
    auto parts = split(body, ':');
    if (parts.size() < 2 || parts.size() > 3) throw DomainError("bad sweep '" + text + "': expected a:b[:step]");
    const int a = parse_int(parts[0], text);
    const int b = parse_int(parts[1], text);
    bool geometric = false;
    int step = 1;
    if (parts.size() == 3) {
      std::string st = parts[2];
      if (!st.empty() && st[0] == '*') {
        geometric = true;
        st = st.substr(1);
      } else if (!st.empty() && st[0] == '+') {
        st = st.substr(1);
      }
      step = parse_int(st, text);
    }
    if (b < a) throw DomainError("bad sweep '" + text + "': empty range");
    if (geometric ? (step < 2 || a < 1) : step < 1) throw DomainError("bad sweep '" + text + "': invalid step");
    for (long long v = a; v <= b; v = geometric ? v * step : v + step) s.values.push_back(static_cast<int>(v));
  } else {
    for (const auto& p : split(body, ',')) s.values.push_back(parse_int(p, text));
  }
  if (s.values.empty()) throw DomainError("bad sweep '" + text + "': no values");
  std::sort(s.values.begin(), s.values.end());
  s.values.erase(std::unique(s.values.begin(), s.values.end()), s.values.end());
  return s;
}

int exit_code(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (r.verdict == Verdict::fail) return 2;
  return 0;
}

namespace {

using Rows = std::vector<ReportRow>;

struct Context {
  const ExperimentConfig& cfg;
  PresentationPtr user_presentation;  // null if none given

  double tol(double def) const {
    if (cfg.tol && !(*cfg.tol > 0.0)) throw DomainError("--tol must be positive");
    return cfg.tol.value_or(def);
  }
  int K(int def) const { return cfg.K.value_or(def); }
  int M(int def) const { return cfg.M.value_or(def); }
  int b(int def) const { return cfg.buffer.value_or(def); }
  std::string family(const std::string& def) const {
    const std::string f = cfg.rep.value_or(def);
    if (f != "voiculescu" && f != "fourier")
      throw DomainError("unknown representation family '" + f + "' (expected voiculescu or fourier)");
    return f;
  }

  std::vector<int> values(const std::string& name, std::vector<int> def) const {
    if (!cfg.sweep) return def;
    if (cfg.sweep->name != name)
      throw DomainError("experiment '" + cfg.experiment + "' sweeps '" + name + "', not '" + cfg.sweep->name + "'");
    return cfg.sweep->values;
  }

  PresentationPtr presentation_for(const std::string& family) const {
    PresentationPtr base = family == "voiculescu" ? z2_presentation() : z_presentation();
    if (!user_presentation) return base;
    if (user_presentation->rank() != base->rank())
      throw DomainError("family '" + family + "' needs a presentation with " + std::to_string(base->rank()) +
                        " generator(s)");
    return user_presentation;
  }

  AlmostRep rep(const std::string& family, int param) const {
    AlmostRep r = family == "voiculescu" ? voiculescu_rep(param) : fourier_zn_rep(param);
    PresentationPtr p = presentation_for(family);
    if (p == r.presentation_ptr()) return r;
    return AlmostRep(p, r.images());
  }

  RepSequence sequence(const std::string& family, const std::vector<int>& params) const {
    std::vector<AlmostRep> reps;
    for (int p : params) reps.push_back(rep(family, p));
    return RepSequence(std::move(reps));
  }
};

const char* param_name(const std::string& family) { return family == "voiculescu" ? "m" : "n"; }

ReportRow row(std::string name, double value, std::optional<double> bound, Verdict v) {
  ReportRow r;
  r.experiment = std::move(name);
  r.value = value;
  r.bound = bound;
  r.verdict = v;
  return r;
}

Verdict verdict(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

void set_param(ReportRow& r, const std::string& family, int v) {
  if (family == "voiculescu")
    r.m = v;
  else
    r.n = v;
}

// One task per value; results concatenated in value order.
Rows parallel_rows(const std::vector<int>& values, const std::function<Rows(int)>& fn) {
  std::vector<std::future<Rows>> tasks;
  for (int v : values) tasks.push_back(std::async(std::launch::async, fn, v));
  Rows out;
  std::exception_ptr first_error;
  for (auto& t : tasks) {
    try {
      auto r = t.get();
      out.insert(out.end(), r.begin(), r.end());
    } catch (...) {
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

std::vector<int> consecutive(int K) {
  std::vector<int> d;
  for (int k = 1; k <= K; ++k) d.push_back(k);
  return d;
}

Rows run_defect(const Context& c) {
  const auto fam = c.family("voiculescu");
  const auto vals = c.values(param_name(fam), {2, 4, 8, 16, 32});
  return parallel_rows(vals, [&](int v) {
    const AlmostRep r = c.rep(fam, v);
    auto rw = row("defect", defect(r, ball(r.presentation(), 1)).epsilon, std::nullopt, Verdict::info);
    set_param(rw, fam, v);
    return Rows{rw};
  });
}

Rows run_drift(const Context& c) {
  const auto fam = c.family("voiculescu");
  const auto vals = c.values(param_name(fam), {4, 8, 16, 32});
  const RepSequence seq = c.sequence(fam, vals);
  const auto d = drift(seq, ball(seq[0].presentation(), 1));
  Rows out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    auto rw = row("drift", d[k], std::nullopt, Verdict::info);
    set_param(rw, fam, vals[k]);
    out.push_back(rw);
  }
  return out;
}

Rows run_asymptotic(const Context& c) {
  const auto fam = c.family("voiculescu");
  const auto vals = c.values(param_name(fam), {4, 8, 16, 32});
  const RepSequence seq = c.sequence(fam, vals);
  const AsymptoticThresholds t;
  const auto rep = asymptotic_report(seq, ball(seq[0].presentation(), 1), t);
  Rows out;
  for (std::size_t k = 0; k < rep.defects.size(); ++k) {
    auto rw = row("asymptotic-report/defect", rep.defects[k], std::nullopt, Verdict::info);
    set_param(rw, fam, vals[k]);
    out.push_back(rw);
  }
  for (std::size_t k = 0; k < rep.drifts.size(); ++k) {
    auto rw = row("asymptotic-report/drift", rep.drifts[k], std::nullopt, Verdict::info);
    set_param(rw, fam, vals[k]);
    out.push_back(rw);
  }
  out.push_back(row("asymptotic-report/defects", rep.defects.back(),
                    std::min(t.ratio * rep.defects.front(), t.cap), verdict(rep.defects_pass)));
  out.push_back(row("asymptotic-report/drifts", rep.drifts.back(), std::min(t.ratio * rep.drifts.front(), t.cap),
                    verdict(rep.drifts_pass)));
  out.push_back(row("asymptotic-report", std::max(rep.defects.back(), rep.drifts.back()), std::nullopt,
                    verdict(rep.pass)));
  return out;
}

Rows run_voiculescu_defect(const Context& c) {
  const double tol = c.tol(1e-10);
  const auto vals = c.values("m", {2, 4, 8, 16, 32});
  return parallel_rows(vals, [&](int m) {
    const AlmostRep r = c.rep("voiculescu", m);
    const double v = defect(r, ball(r.presentation(), 1)).epsilon;
    const double expect = std::abs(std::polar(1.0, 2.0 * std::numbers::pi / m) - 1.0);
    auto rw = row("voiculescu-defect", v, expect, verdict(std::abs(v - expect) <= tol));
    rw.m = m;
    return Rows{rw};
  });
}

Rows run_index(const Context& c, bool use_f_prime) {
  const LevelSpec spec = LevelSpec::consecutive(c.K(20), c.M(5), c.b(3));
  const ComplexMatrix A = use_f_prime ? f_prime(spec) : shift_F(spec);
  const int expect = use_f_prime ? 1 : 0;
  const IndexReport r = essential_index(A, spec);
  auto rw = row(use_f_prime ? "index" : "index-F", r.index, expect, verdict(r.index == expect));
  rw.K = spec.levels();
  rw.M = spec.tail_copies();
  rw.b = spec.buffer();
  return {rw};
}

Rows run_commutator(const Context& c) {
  const LevelSpec spec = LevelSpec::consecutive(c.K(10), c.M(5), c.b(3));
  Rows out;
  for (const auto& [name, q] : {std::pair{"commutator/e", TailStableSequence::first_unit(spec.dims())},
                                std::pair{"commutator/unit", TailStableSequence::unit(spec.dims())}}) {
    const double v = commutator_defect(q, spec);
    double dmax = 0.0;
    for (double d : q.alpha_defects()) dmax = std::max(dmax, d);
    const double bound = 2.0 * dmax + 1e-9;
    auto rw = row(name, v, bound, verdict(v <= bound));
    rw.K = spec.levels();
    rw.M = spec.tail_copies();
    out.push_back(rw);
  }
  return out;
}

Rows run_rank_stab(const Context& c) {
  const int K = c.K(6);
  const double tol = c.tol(1e-9);
  const auto dims = consecutive(K);
  std::vector<ComplexMatrix> blocks;
  for (int k = 1; k <= K; ++k) {
    ComplexMatrix p(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
    for (int i = 0; i < std::min(k, 3); ++i) p(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0;
    blocks.push_back(std::move(p));
  }
  Rows out;
  auto add = [&](const std::string& name, const TailStableSequence& p, int rank, int onset) {
    const auto r = rank_stabilization(p, tol);
    auto a = row(name + ".rank", r.rank, rank, verdict(r.rank == rank));
    auto b = row(name + ".onset", r.onset, onset, verdict(r.onset == onset));
    a.K = b.K = K;
    out.push_back(a);
    out.push_back(b);
  };
  add("rank-stab/e", TailStableSequence::first_unit(dims), 1, 1);
  add("rank-stab/min3", TailStableSequence(std::move(blocks), 1.0), 3, std::min(3, K - 1));
  return out;
}

Character trivial_character(const RepSequence& seq) { return Character::trivial(seq[0].presentation().rank()); }

RepSequence fourier_prefix(const Context& c, int length) { return c.sequence("fourier", consecutive(length)); }

Rows run_quasicentral(const Context& c) {
  const auto vals = c.values("n", {2, 4, 8});
  const SuspensionFn f = SuspensionFn::by_name(c.cfg.f);
  const double tol = c.tol(1e-12);
  return parallel_rows(vals, [&](int n) {
    const int m = n;
    const RepSequence seq = fourier_prefix(c, n + m);
    const S3Model model(seq, trivial_character(seq), n + m, std::max(2, m));
    const Word a = Word::letter(0, 1);
    const auto [ea, fF] = quasicentral_report(model, approx_unit(model, n, m), a, f);
    auto r1 = row("quasicentral/e-commutator", ea, tol, verdict(ea <= tol));
    const double lip = f.lipschitz() / m + 1e-9;
    auto r2 = row("quasicentral/f-commutator", fF, lip, verdict(fF <= lip));
    for (auto* r : {&r1, &r2}) {
      r->n = n;
      r->m = m;
    }
    return Rows{r1, r2};
  });
}

Rows run_shift_vs_translation(const Context& c) {
  const auto vals = c.values("m", {4, 8, 16, 32});
  const SuspensionFn f = SuspensionFn::by_name(c.cfg.f);
  return parallel_rows(vals, [&](int m) {
    const double v = shift_translation_gap(m, f);
    const double bound = 2.0 / m;
    auto rw = row("shift-vs-translation", v, bound, verdict(v <= bound));
    rw.m = m;
    return Rows{rw};
  });
}

Rows run_equivalence_gap(const Context& c) {
  const auto vals = c.values("n", {4, 8, 16});
  const SuspensionFn f = SuspensionFn::by_name(c.cfg.f);
  const int nmax = vals.back();
  const RepSequence seq = fourier_prefix(c, 2 * nmax);
  const S3Model model(seq, trivial_character(seq), 2 * nmax, std::max(2, nmax));
  const Word a = Word::letter(0, 1);
  std::vector<double> gaps(vals.size());
  Rows out = parallel_rows(vals, [&](int n) {
    const GapReport g = equivalence_gap(model, a, f, n, n);
    Rows rs{row("equivalence-gap", g.gap, g.audit_bound, verdict(g.audit_ok)),
            row("equivalence-gap/window", g.window, std::nullopt, Verdict::info),
            row("equivalence-gap/block-drift", g.block_drift, std::nullopt, Verdict::info),
            row("equivalence-gap/shift", g.shift, std::nullopt, Verdict::info),
            row("equivalence-gap/grid-mismatch", g.grid_mismatch, std::nullopt, Verdict::info)};
    for (auto& r : rs) {
      r.n = n;
      r.m = n;
    }
    return rs;
  });
  for (const auto& r : out)
    if (r.experiment == "equivalence-gap")
      gaps[static_cast<std::size_t>(std::find(vals.begin(), vals.end(), *r.n) - vals.begin())] = r.value;
  if (gaps.size() > 1) {
    double worst = 0.0;
    for (std::size_t i = 1; i < gaps.size(); ++i) worst = std::max(worst, gaps[i] / gaps[i - 1]);
    out.push_back(row("equivalence-gap/decay", worst, 1.0, verdict(worst < 1.0)));
  }
  return out;
}

Rows run_m_schedule(const Context& c) {
  const auto vals = c.values("n", {4, 8, 16, 32, 64});
  const RepSequence seq = fourier_prefix(c, 2 * vals.back());
  const auto ms = m_schedule(seq, ball(seq[0].presentation(), 1), vals);
  Rows out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    auto rw = row("m-schedule", ms[i], vals[i], Verdict::info);
    rw.n = vals[i];
    rw.m = ms[i];
    out.push_back(rw);
  }
  return out;
}

RepSequence voiculescu_powers(const Context& c, int K) {
  std::vector<int> ms;
  for (int k = 1; k <= K; ++k) ms.push_back(1 << k);
  return c.sequence("voiculescu", ms);
}

Rows run_trivialization(const Context& c) {
  const int K = c.K(6);
  const auto vals = c.values("n", {1, 2, 3, 4});
  const RepSequence seq = voiculescu_powers(c, K);
  const FiniteSubset F = ball(seq[0].presentation(), 1);
  Rows out = parallel_rows(vals, [&](int n) {
    const auto tau = from_asymptotic(seq, n, F);
    const double v = trivialization_defect(tau, F);
    auto rw = row("trivialization", v, tau.epsilon(), verdict(v <= tau.epsilon() + 1e-12));
    rw.n = n;
    rw.K = K;
    return Rows{rw};
  });
  if (out.size() > 1) {
    double rise = 0.0;
    for (std::size_t i = 1; i < out.size(); ++i) rise = std::max(rise, out[i].value - out[i - 1].value);
    auto rw = row("trivialization/monotone", rise, 0.0, verdict(rise <= 1e-12));
    rw.K = K;
    out.push_back(rw);
  }
  return out;
}

Rows run_cocycle(const Context& c) {
  const int K = c.K(6);
  const auto vals = c.values("n", {1, 2, 3, 4});
  const RepSequence seq = voiculescu_powers(c, K);
  const FiniteSubset F = ball(seq[0].presentation(), 1);
  return parallel_rows(vals, [&](int n) {
    const auto tau = from_asymptotic(seq, n, F);
    const double triv = trivialization_defect(tau, F);
    const double bound = 2.0 * triv + 1e-9;
    double worst = 0.0;
    bool ok = true;
    for (const auto& g : F.words())
      for (const auto& h : F.words()) {
        const auto r = transition_cocycle_defect(tau, g, h);
        worst = std::max(worst, r.defect);
        ok = ok && r.defect <= r.bound && r.defect <= bound;
      }
    auto rw = row("cocycle", worst, bound, verdict(ok));
    rw.n = n;
    rw.K = K;
    return Rows{rw};
  });
}

using Runner = std::function<Rows(const Context&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r{
      {"defect", run_defect},
      {"drift", run_drift},
      {"asymptotic-report", run_asymptotic},
      {"voiculescu-defect", run_voiculescu_defect},
      {"index", [](const Context& c) { return run_index(c, true); }},
      {"index-F", [](const Context& c) { return run_index(c, false); }},
      {"commutator", run_commutator},
      {"rank-stab", run_rank_stab},
      {"quasicentral", run_quasicentral},
      {"shift-vs-translation", run_shift_vs_translation},
      {"equivalence-gap", run_equivalence_gap},
      {"m-schedule", run_m_schedule},
      {"trivialization", run_trivialization},
      {"cocycle", run_cocycle},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{
      "defect",     "drift",        "asymptotic-report",    "voiculescu-defect", "index",
      "index-F",    "commutator",   "rank-stab",            "quasicentral",      "shift-vs-translation",
      "equivalence-gap", "m-schedule", "trivialization", "cocycle"};
  return names;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
  const auto& reg = registry();
  auto it = reg.find(config.experiment);
  if (it == reg.end()) throw DomainError("unknown experiment '" + config.experiment + "'");
  Context c{config, nullptr};
  if (config.presentation)
    c.user_presentation = std::make_shared<const GroupPresentation>(parse_presentation(*config.presentation));
  Rows rows = it->second(c);
  for (const auto& r : rows)
    if (!std::isfinite(r.value)) throw NumericalError("experiment produced a non-finite value");
  return rows;
}

}  // namespace asymrep
