#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sqgfront/initial_data.hpp"
#include "sqgfront/paraproduct.hpp"
#include "support.hpp"

using namespace sqgfront;
using sqgfront::test::max_diff;
using sqgfront::test::random_field;

TEST(CutoffChi, Examples) {
  const CutoffChi chi(0.1);
  EXPECT_EQ(chi(0.0), 1.0);
  EXPECT_EQ(chi(0.075), 1.0);
  EXPECT_EQ(chi(0.1), 0.0);
  EXPECT_EQ(chi(0.2), 0.0);
  EXPECT_NEAR(chi(0.0875), 0.5, 1e-15);
  for (double r = 0.075; r < 0.1; r += 1e-4) EXPECT_GE(chi(r), chi(r + 1e-4));
}

TEST(Paraproduct, LowHighCapturesProduct) {
  const SpectralSpace sp(48);
  const WeylParaproduct para{CutoffChi(0.1)};
  const PeriodicField u = single_mode(sp, 1, 1.0), v = single_mode(sp, 40, 1.0);
  EXPECT_LE(max_diff(para.apply(u, v), multi_mode(sp, {{39, 0.5}, {41, 0.5}})), 1e-15);
  EXPECT_TRUE(para.apply(v, u).is_zero());
  EXPECT_TRUE(para.apply(PeriodicField(sp), v).is_zero());
  EXPECT_TRUE(para.remainder(u, v).is_zero());
  EXPECT_TRUE(para.remainder(PeriodicField(sp), v).is_zero());
}

TEST(Paraproduct, MatchesDefiningSum) {
  const SpectralSpace sp(24);
  for (double eps : {0.05, 0.1, 0.3}) {
    const WeylParaproduct para{CutoffChi(eps)};
    const PeriodicField u = random_field(sp, 1), v = random_field(sp, 2);
    EXPECT_LE(max_diff(para.apply(u, v), test::paraproduct_oracle(para.chi(), u, v)), 1e-14) << eps;
  }
}

TEST(Paraproduct, InverseTwoPiPrefactor) {
  const SpectralSpace sp(16);
  const PeriodicField u = random_field(sp, 1), v = random_field(sp, 2);
  const WeylParaproduct unit, literal{CutoffChi{}, ParaproductPrefactor::inverse_two_pi};
  EXPECT_LE(max_diff(literal.apply(u, v), (0.5 / std::numbers::pi) * unit.apply(u, v)), 1e-15);
}

TEST(BonyRemainder, CosineSquaredAgainstConvolution) {
  const SpectralSpace sp(8);
  const WeylParaproduct para;
  const PeriodicField u = single_mode(sp, 1, 1.0);
  const PeriodicField uv = test::to_field(test::conv(test::to_sparse(u), test::to_sparse(u)), sp);
  const PeriodicField tuv = test::paraproduct_oracle(para.chi(), u, u);
  EXPECT_LE(max_diff(para.remainder(u, u), uv - tuv - tuv), 1e-15);
}

TEST(BonyRemainder, IdentityOnRandomFields) {
  const SpectralSpace sp(32);
  const WeylParaproduct para;
  const PeriodicField u = random_field(sp, 3), v = random_field(sp, 4);
  const PeriodicField sum = para.apply(u, v) + para.apply(v, u) + para.remainder(u, v);
  EXPECT_LE(max_diff(sum, multiply(u, v)), 1e-12);
}

TEST(OperatorMatrix, SingleModeEntries) {
  const SpectralSpace sp(16);
  const WeylParaproduct para;
  for (int k : {1, 3}) {
    const ParaOperatorMatrix m = para.matrix(single_mode(sp, k, 1.0));
    EXPECT_EQ(m.hermitian_defect(), 0.0);
    for (int xi = -16; xi <= 16; ++xi)
      for (int eta = -16; eta <= 16; ++eta) {
        if (xi == 0 || eta == 0) continue;
        const double expected = (std::abs(xi - eta) == k && xi + eta != 0)
                                    ? 0.5 * para.chi()(std::abs(xi - eta) / double(std::abs(xi + eta)))
                                    : 0.0;
        EXPECT_EQ(m(xi, eta), Complex(expected)) << xi << ' ' << eta;
      }
  }
  EXPECT_TRUE(para.matrix(PeriodicField(sp)).entries().isZero(0.0));
}

TEST(OperatorMatrix, ApplyMatchesParaproduct) {
  const SpectralSpace sp(20);
  const WeylParaproduct para;
  const PeriodicField u = random_field(sp, 5), v = random_field(sp, 6);
  EXPECT_LE(max_diff(para.matrix(u).apply(v), para.apply(u, v)), 1e-14);
  EXPECT_LE(max_diff(from_mode_vector(sp, to_mode_vector(v), v[0]), v), 0.0);
}

TEST(OperatorNorm, Examples) {
  const SpectralSpace sp(32);
  const WeylParaproduct para;
  EXPECT_EQ(operator_norm(para, PeriodicField(sp)), 0.0);
  const PeriodicField u = single_mode(sp, 2, 0.3);
  const double n = operator_norm(para, u);
  EXPECT_GT(n, 0.0);
  EXPECT_LE(n, 1.05 * sup_norm(u));
  EXPECT_NEAR(operator_norm(para, -3.0 * u), 3.0 * n, 1e-13);
}

TEST(Lemma31, Examples) {
  const SpectralSpace sp(32);
  const WeylParaproduct para;
  const PeriodicField v = single_mode(sp, 16, 1.0), u = single_mode(sp, 1, 1.0);
  EXPECT_EQ(lemma31_residual(para, PeriodicField(sp), v), 0.0);
  const PeriodicField w = random_field(sp, 8, 1.0, 2.0);
  EXPECT_NEAR(lemma31_residual(para, u, w), lemma31_residual(para, w, u), 1e-12);
}

TEST(Corollary32, Examples) {
  const SpectralSpace sp(64);
  EXPECT_EQ(corollary32_defect(PeriodicField(sp), 4.0), 0.0);
  for (double s : {1.0, 2.0, 4.0})
    EXPECT_NEAR(corollary32_defect(single_mode(sp, 1, 1.0), s), std::log(2.0) * std::pow(2.0, s - 1.0), 1e-12);
  double worst = 0.0;
  for (int k = 1; k <= 32; ++k) worst = std::max(worst, corollary32_defect(single_mode(sp, k, 1.0), 4.0));
  EXPECT_LT(worst, 8.0);
}

TEST(Lemma33, Examples) {
  const SpectralSpace sp(64);
  const WeylParaproduct para;
  const PeriodicField u = random_field(sp, 1), v = random_field(sp, 2);
  EXPECT_EQ(lemma33_residual(para, u, v, 0.0), 0.0);
  EXPECT_EQ(lemma33_residual(para, PeriodicField(sp), v, 4.0), 0.0);
}

TEST(Lemma32, ZeroFields) {
  const SpectralSpace sp(16);
  const WeylParaproduct para;
  const PeriodicField u = random_field(sp, 1);
  const TripleProductResidual r = lemma32_residual(para, PeriodicField(sp), u, u, 4.0);
  EXPECT_EQ(r.residual, 0.0);
  EXPECT_EQ(r.ratio(), 0.0);
}
