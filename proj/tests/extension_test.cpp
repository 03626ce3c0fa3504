#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "asymrep/error.hpp"
#include "asymrep/extension.hpp"
#include "asymrep/linalg.hpp"

using namespace asymrep;

namespace {

RepSequence voiculescu_prefix(int K) {
  std::vector<AlmostRep> reps;
  for (int k = 1; k <= K; ++k) reps.push_back(voiculescu_rep(k));
  return RepSequence(std::move(reps));
}

RepSequence fourier_prefix(int K) {
  std::vector<AlmostRep> reps;
  for (int k = 1; k <= K; ++k) reps.push_back(fourier_zn_rep(k));
  return RepSequence(std::move(reps));
}

Word letter(std::size_t g, int s = 1) { return Word({{g, s}}); }

// P_n a' F^d P_n f(e_n) from the full dense operators.
ComplexMatrix dense_rho_bar(const S3Model& model, const Word& a, int d, const SuspensionFn& f, int n, int m) {
  const auto w = window_projection(model, n, m);
  ComplexMatrix Fd = ComplexMatrix::identity(model.layout().size());
  if (d == 1) Fd = model.shift();
  if (d == -1) Fd = model.shift().adjoint();
  const auto fe = diag_apply([&](double t) { return f(t); }, approx_unit(model, n, m).values).to_dense();
  return (model.lift(a) * Fd * fe).select(w.indices, w.indices);
}

}  // namespace

TEST(SuspensionFn, Factories) {
  auto b = SuspensionFn::poly_bump();
  EXPECT_EQ(b(0.5), cplx(0.25));
  EXPECT_EQ(b.sup_norm(), 0.25);
  EXPECT_EQ(SuspensionFn::by_name("bump").label(), b.label());
  EXPECT_EQ(SuspensionFn::by_name("poly-bump")(0.25), cplx(0.1875));
  EXPECT_EQ(SuspensionFn::by_name("zero")(0.3), cplx(0.0));
  EXPECT_NEAR(SuspensionFn::by_name("sin")(0.5).real(), 1.0, 1e-15);
  EXPECT_THROW(SuspensionFn::by_name("cos"), DomainError);
  EXPECT_THROW(SuspensionFn([](double) { return cplx(1.0); }, "one", 1.0, 0.0), DomainError);
}

TEST(S3Model, Construction) {
  EXPECT_NO_THROW(S3Model(voiculescu_prefix(5), Character::trivial(2), 5, 2));
  EXPECT_THROW(S3Model(voiculescu_prefix(3), Character::trivial(2), 5, 2), DomainError);
  EXPECT_THROW(S3Model(voiculescu_prefix(5), Character::trivial(1), 5, 2), DimensionError);
  EXPECT_THROW(S3Model(voiculescu_prefix(5), Character::trivial(2), 5, 1), DomainError);
  std::vector<AlmostRep> skip{voiculescu_rep(1), voiculescu_rep(3), voiculescu_rep(4)};
  EXPECT_THROW(S3Model(RepSequence(skip), Character::trivial(2), 3, 2), DomainError);
}

TEST(S3Model, LabelsAreABijectionCompatibleWithShift) {
  S3Model model(voiculescu_prefix(6), Character::trivial(2), 6, 4);
  const auto& L = model.layout();
  const auto F = model.shift();
  for (std::size_t x = 0; x < L.size(); ++x) {
    const Label l = model.label(x);
    ASSERT_EQ(model.index(l), x);
    const auto target = model.index({l.i - 1, l.j});
    for (std::size_t r = 0; r < L.size(); ++r)
      EXPECT_EQ(F(r, x), cplx(target && *target == r ? 1.0 : 0.0)) << l.i << "," << l.j;
  }
  EXPECT_EQ(model.label(L.v(3, 2)), (Label{3, 2}));
  EXPECT_EQ(model.label(L.w(0, 1, 1)), (Label{0, 1}));
  EXPECT_EQ(model.label(L.w(3, 2, 4)), (Label{2, 4}));
  EXPECT_FALSE(model.index({1, 7}));
  EXPECT_FALSE(model.index({-4, 1}));
}

TEST(S3Model, CheckWindow) {
  S3Model model(voiculescu_prefix(6), Character::trivial(2), 6, 3);
  EXPECT_NO_THROW(model.check_window(2, 4));
  EXPECT_THROW(model.check_window(3, 4), DomainError);
  EXPECT_THROW(model.check_window(1, 5), DomainError);
  EXPECT_THROW(model.check_window(0, 2), DomainError);
  EXPECT_THROW(model.check_window(2, 0), DomainError);
}

TEST(ApproxUnit, FirstExample) {
  EXPECT_EQ(approx_unit_entry(1, 2, {1, 1}), 1.0);
  EXPECT_EQ(approx_unit_entry(1, 2, {-1, 2}), 1.0);
  EXPECT_EQ(approx_unit_entry(1, 2, {2, 1}), 0.5);
  EXPECT_EQ(approx_unit_entry(1, 2, {2, 3}), 0.5);
  EXPECT_EQ(approx_unit_entry(1, 2, {3, 3}), 0.0);
  EXPECT_EQ(approx_unit_entry(1, 2, {2, 4}), 0.0);
  EXPECT_EQ(approx_unit_entry(1, 2, {-2, 1}), 0.0);
  EXPECT_EQ(approx_unit_entry(1, 2, {4, 1}), 0.0);

  S3Model model(voiculescu_prefix(4), Character::trivial(2), 4, 3);
  auto e = approx_unit(model, 1, 2);
  for (std::size_t x = 0; x < model.layout().size(); ++x) {
    const double v = e.values[x].real();
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_EQ(v, approx_unit_entry(1, 2, model.label(x)));
  }
}

TEST(WindowProjection, OrderAndSize) {
  S3Model model(voiculescu_prefix(6), Character::trivial(2), 6, 3);
  auto w = window_projection(model, 2, 3);
  ASSERT_EQ(w.dim(), 15u);
  EXPECT_EQ(w.labels[0], (Label{3, 1}));
  EXPECT_EQ(w.labels[1], (Label{4, 1}));
  EXPECT_EQ(w.labels[3], (Label{3, 2}));
  EXPECT_EQ(w.labels[14], (Label{5, 5}));
  for (std::size_t k = 0; k < w.dim(); ++k) EXPECT_EQ(model.label(w.indices[k]), w.labels[k]);
}

TEST(Quasicentral, Commutators) {
  S3Model model(voiculescu_prefix(8), Character::trivial(2), 8, 5);
  const auto bump = SuspensionFn::poly_bump();
  for (int m : {2, 3, 4}) {
    auto e = approx_unit(model, 2, m);
    for (std::size_t g : {0u, 1u}) {
      auto [ea, fF] = quasicentral_report(model, e, letter(g), bump);
      EXPECT_LE(ea, 1e-12);
      EXPECT_LE(fF, bump.lipschitz() / m + 1e-12);
    }
    EXPECT_EQ(quasicentral_report(model, e, letter(0), SuspensionFn::zero()).second, 0.0);
  }
  auto [ea, fF] = quasicentral_report(model, approx_unit(model, 2, 2), letter(0), bump);
  EXPECT_NEAR(fF, 0.25, 1e-14);
  S3Model other(voiculescu_prefix(5), Character::trivial(2), 5, 2);
  EXPECT_THROW(quasicentral_report(other, approx_unit(model, 2, 2), letter(0), bump), DimensionError);
}

TEST(RhoBar, MatchesDenseCompression) {
  S3Model model(voiculescu_prefix(8), Character({cplx(0, 1), cplx(-1, 0)}), 8, 5);
  const auto sine = SuspensionFn::sine();
  const Word ab({{0, 1}, {1, -1}});
  for (int n : {1, 3})
    for (int m : {2, 4})
      for (int d : {-1, 0, 1})
        for (const Word& a : {letter(0), letter(1), ab})
          EXPECT_LE(max_abs_diff(rho_bar(model, a, d, sine, n, m), dense_rho_bar(model, a, d, sine, n, m)), 1e-14)
              << n << " " << m << " " << d;
  EXPECT_THROW(rho_bar(model, letter(0), 2, sine, 1, 2), DomainError);
}

TEST(BetaEval, Examples) {
  auto bump = SuspensionFn::poly_bump();
  std::vector<cplx> diag{0.25, 0.0};
  EXPECT_EQ(beta_eval(2, 0, bump), ComplexMatrix::diagonal(diag));
  auto T = voiculescu_pair(4).first;
  auto b1 = beta_eval(4, 1, bump);
  EXPECT_EQ(b1(3, 0), cplx(0.1875));
  EXPECT_EQ(b1(0, 1), cplx(0.25));
  EXPECT_EQ(b1(2, 3), cplx(0.0));
  EXPECT_LE(max_abs_diff(beta_eval(4, -1, bump), T.adjoint() * beta_eval(4, 0, bump)), 0.0);
  EXPECT_THROW(beta_eval(0, 0, bump), DomainError);
}

TEST(SigmaHat, PadsWithCharacter) {
  S3Model model(voiculescu_prefix(6), Character({cplx(0, 1), cplx(1, 0)}), 6, 3);
  auto s = sigma_hat(model, letter(0), 2, 3);
  ASSERT_EQ(s.rows(), 5u);
  EXPECT_EQ(s.block(0, 0, 2, 2), voiculescu_pair(2).first);
  EXPECT_EQ(s(4, 4), cplx(0, 1));
  EXPECT_EQ(s(2, 3), cplx(0.0));
}

TEST(ShiftTranslationGap, ClosedForm) {
  auto bump = SuspensionFn::poly_bump();
  for (int m : {1, 2, 4, 8, 16, 32}) EXPECT_NEAR(shift_translation_gap(m, bump), (m - 1.0) / (1.0 * m * m), 1e-15);
  EXPECT_EQ(shift_translation_gap(8, SuspensionFn::zero()), 0.0);
  EXPECT_THROW(shift_translation_gap(0, bump), DomainError);
}

TEST(EquivalenceGap, ZeroFunctionGivesZero) {
  S3Model model(voiculescu_prefix(8), Character::trivial(2), 8, 4);
  auto g = equivalence_gap(model, letter(0), SuspensionFn::zero(), 3, 4);
  EXPECT_EQ(g.gap, 0.0);
  EXPECT_EQ(g.block_drift, 0.0);
  EXPECT_EQ(g.window, 0.0);
  EXPECT_TRUE(g.audit_ok);
}

TEST(EquivalenceGap, AuditAndDenseRoute) {
  S3Model model(voiculescu_prefix(12), Character::trivial(2), 12, 6);
  for (const auto& f : {SuspensionFn::poly_bump(), SuspensionFn::sine()})
    for (int n : {1, 2, 4, 6})
      for (int m : {2, 3, 6}) {
        if (n + m > 12) continue;
        for (const Word& a : {letter(0), letter(1), Word({{0, 1}, {1, 1}})}) {
          auto g = equivalence_gap(model, a, f, n, m);
          EXPECT_TRUE(g.audit_ok) << n << " " << m;
          EXPECT_LE(g.gap, g.audit_bound + 1e-9);
          auto dense = dense_rho_bar(model, a, 1, f, n, m) - kron(sigma_hat(model, a, n, m), beta_eval(m, 1, f));
          EXPECT_NEAR(g.gap, operator_norm(dense), 1e-12);
        }
      }
}

TEST(WindowedDrift, Examples) {
  auto seq = fourier_prefix(10);
  auto F = ball(seq[0].presentation(), 1);
  EXPECT_EQ(windowed_drift(seq, F, 3, 0), 0.0);
  auto d = drift(seq, F);
  EXPECT_NEAR(windowed_drift(seq, F, 3, 1), d[2], 1e-14);
  EXPECT_GE(windowed_drift(seq, F, 3, 4), windowed_drift(seq, F, 3, 3));
  EXPECT_THROW(windowed_drift(seq, F, 8, 3), DomainError);
  EXPECT_THROW(windowed_drift(seq, F, 0, 1), DomainError);
}

TEST(MSchedule, FourierDefaults) {
  auto seq = fourier_prefix(128);
  auto F = ball(seq[0].presentation(), 1);
  std::vector<int> ns{4, 8, 16, 32, 64};
  auto ms = m_schedule(seq, F, ns);
  EXPECT_EQ(ms, (std::vector<int>{1, 1, 2, 3, 4}));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double tau = std::numbers::pi / std::sqrt(ns[i]);
    EXPECT_LE(windowed_drift(seq, F, ns[i], ms[i]), tau);
    EXPECT_GT(windowed_drift(seq, F, ns[i], ms[i] + 1), tau);
  }
}

TEST(MSchedule, Errors) {
  auto seq = fourier_prefix(40);
  auto F = ball(seq[0].presentation(), 1);
  EXPECT_THROW(m_schedule(seq, F, {}), DomainError);
  EXPECT_THROW(m_schedule(seq, F, {0}), DomainError);
  ScheduleOptions tight;
  tight.tau0 = 1e-6;
  EXPECT_THROW(m_schedule(seq, F, {4, 8}, tight), DomainError);
  ScheduleOptions flat;
  flat.tau0 = 100.0;
  flat.cap = [](int) { return 1; };
  EXPECT_THROW(m_schedule(seq, F, {4, 8}, flat), DomainError);
  ScheduleOptions wide;
  wide.tau0 = 100.0;
  EXPECT_THROW(m_schedule(seq, F, {30}, wide), DomainError);
  ScheduleOptions shrink;
  shrink.tau0 = 100.0;
  shrink.cap = [](int n) { return n == 8 ? 1 : 3; };
  EXPECT_THROW(m_schedule(seq, F, {4, 8}, shrink), DomainError);
}
