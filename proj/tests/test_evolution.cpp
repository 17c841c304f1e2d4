#include <gtest/gtest.h>

#include <cmath>

#include "sqgfront/errors.hpp"
#include "sqgfront/evolution.hpp"
#include "sqgfront/initial_data.hpp"
#include "support.hpp"

using namespace sqgfront;
using sqgfront::test::max_diff;
using sqgfront::test::random_field;
using sqgfront::test::Sparse;

namespace {

Complex log_dxx(int k) { return k == 0 ? Complex{} : -std::log(std::abs(k)) * double(k) * double(k); }

PeriodicField flux_oracle(const PeriodicField& phi) {
  using namespace sqgfront::test;
  const Sparse p = to_sparse(phi), p2 = conv(p, p), p3 = conv(p2, p);
  Sparse inner = conv(p2, apply_symbol(p, log_dxx));
  inner = axpy(inner, -1.0, conv(p, apply_symbol(p2, log_dxx)));
  inner = axpy(inner, 1.0 / 3.0, apply_symbol(p3, log_dxx));
  return to_field(apply_symbol(inner, [](int k) { return Complex(0.0, 0.5 * k); }), phi.space());
}

SolverConfig config(int n) {
  SolverConfig c;
  c.N = n;
  return c;
}

}  // namespace

TEST(Flux, ZeroAndHomogeneity) {
  const SpectralSpace sp(16);
  EXPECT_TRUE(flux(PeriodicField(sp)).is_zero());
  const PeriodicField phi = random_field(sp, 1, 0.3, 2.0);
  const PeriodicField f = flux(phi);
  EXPECT_LE(max_diff(flux(2.0 * phi), 8.0 * f), 1e-11 * f.max_abs_coefficient());
}

TEST(Flux, MatchesConvolutionOracle) {
  const SpectralSpace sp(16);
  const PeriodicField phi = single_mode(sp, 3, 0.1);
  EXPECT_LE(max_diff(flux(phi), flux_oracle(phi)), 1e-15);
  const PeriodicField rich = random_field(sp, 2, 0.2, 1.0);
  EXPECT_LE(max_diff(flux(rich), flux_oracle(rich)), 1e-11);
}

TEST(Flux, AlphaOneIsFlux) {
  const SpectralSpace sp(16);
  const PeriodicField phi = random_field(sp, 3, 0.2, 1.0);
  EXPECT_LE(max_diff(flux_alpha(phi, 1.0), flux(phi)), 1e-14);
}

TEST(Rhs, Linearization) {
  const SolverConfig cfg = config(16);
  EXPECT_TRUE(rhs(PeriodicField(cfg.space()), cfg).is_zero());
  for (int k : {2, 5}) {
    const double delta = 1e-6;
    PeriodicField expected(cfg.space());
    expected.set_real_mode(k, Complex(0.0, 0.5 * 2.0 * k * std::log(k)));  // -2k log k sin kx
    const PeriodicField lin = (1.0 / delta) * rhs(single_mode(cfg.space(), k, delta), cfg);
    EXPECT_LE(max_diff(lin, expected), 1e-8);
  }
}

TEST(Rhs, AlphaTwoDispersion) {
  SolverConfig cfg = config(16);
  cfg.alpha = 2.0;
  cfg.nonlinear = false;
  const int k = 4;
  PeriodicField expected(cfg.space());
  expected.set_real_mode(k, Complex(0.0, 0.5 * cfg.b_alpha));  // -b sin kx
  EXPECT_LE(max_diff(rhs(single_mode(cfg.space(), k, 1.0), cfg), expected), 1e-15);
}

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.b_alpha = 1.0;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg.alpha = 1.5;
  EXPECT_NO_THROW(cfg.validate());
  cfg.N = 4;
  EXPECT_THROW(cfg.validate(), DomainError);
  cfg = SolverConfig{};
  cfg.eps = 0.7;
  EXPECT_THROW(cfg.validate(), DomainError);
}

TEST(BField, Examples) {
  const SpectralSpace sp(8);
  EXPECT_TRUE(b_field(PeriodicField(sp)).is_zero());
  PeriodicField expected = single_mode(sp, 2, 1.0);
  expected.at(0) = 2.0;
  EXPECT_LE(max_diff(b_field(single_mode(sp, 1, 1.0)), expected), 1e-15);
  const PeriodicField phi = random_field(sp, 1, 0.5, 1.0);
  EXPECT_LE(max_diff(b_field(-3.0 * phi), 9.0 * b_field(phi)), 1e-12);
}

TEST(CommutatorBracket, Examples) {
  const SpectralSpace sp(16);
  const WeylParaproduct para;
  const PeriodicField u = random_field(sp, 1), w = random_field(sp, 2);
  EXPECT_LE(commutator_bracket(para, u, u, w).max_abs_coefficient(), 0.0);
  EXPECT_TRUE(commutator_bracket(para, PeriodicField(sp), u, w).is_zero());

  const PeriodicField phi = multi_mode(sp, {{2, 0.1}, {3, 0.05}});
  const PeriodicField phix = apply(Multiplier::dx(sp), phi);
  const Eigen::MatrixXcd a = para.matrix(phix).entries(), b = para.matrix(phi).entries();
  const Eigen::VectorXcd x = to_mode_vector(phix);
  const PeriodicField oracle = from_mode_vector(sp, a * (b * x) - b * (a * x));
  EXPECT_LE(max_diff(commutator_bracket(para, phix, phi, phix), oracle), 1e-16);
}

TEST(Decomposition, ReassemblesRhs) {
  const SolverConfig cfg = config(32);
  const WeylParaproduct para = cfg.paraproduct();
  const PeriodicField phi = random_field(cfg.space(), 5, 0.1, 3.0);
  const Decomposition d = decompose(phi, para);
  EXPECT_LE(max_diff(d.rhs(), rhs(phi, cfg)), 1e-11);
  EXPECT_LE(max_diff(extract_r7(phi, para), d.r7), 0.0);
  EXPECT_TRUE(extract_r7(PeriodicField(cfg.space()), para).is_zero());
  const PeriodicField r = d.r7;
  EXPECT_LE(max_diff(extract_r7(2.0 * phi, para), 8.0 * r), 1e-11 * r.max_abs_coefficient());
}

TEST(Stepper, ZeroStaysZero) {
  const SolverConfig cfg = config(16);
  const Stepper st(cfg);
  PeriodicField phi(cfg.space());
  for (int i = 0; i < 20; ++i) phi = st.step(phi, 0.01);
  EXPECT_TRUE(phi.is_zero());
}

TEST(Stepper, LinearPhaseShift) {
  for (Integrator integ : {Integrator::ifrk4, Integrator::rk4}) {
    const double per_step = integ == Integrator::ifrk4 ? 1e-12 : 1e-11;
    SolverConfig cfg = config(16);
    cfg.nonlinear = false;
    cfg.integrator = integ;
    const Stepper st(cfg);
    const int k = 5;
    const double h = 1e-3, omega = 2.0 * k * std::log(k);
    PeriodicField phi = single_mode(cfg.space(), k, 1.0);
    for (int n = 1; n <= 10; ++n) {
      phi = st.step(phi, h);
      PeriodicField exact(cfg.space());
      exact.set_real_mode(k, 0.5 * std::exp(Complex(0.0, omega * n * h)));
      EXPECT_LE(max_diff(phi, exact), n * per_step);
    }
  }
}

TEST(Stepper, MeanAndReality) {
  const SolverConfig cfg = config(16);
  const Stepper st(cfg);
  PeriodicField phi = exp_cos(cfg.space(), 0.05);
  for (int i = 0; i < 200; ++i) {
    phi = st.step(phi, cfg.time_step());
    ASSERT_EQ(phi[0], Complex{});
    ASSERT_EQ(phi.hermitian_defect(), 0.0);
  }
}

TEST(Integrate, ZeroTrajectory) {
  SolverConfig cfg = config(16);
  cfg.t_end = 0.1;
  const IntegrationResult res = integrate(PeriodicField(cfg.space()), cfg);
  EXPECT_EQ(res.outcome, Outcome::completed);
  EXPECT_GE(res.trajectory.size(), 2u);
  for (const auto& p : res.trajectory) {
    EXPECT_TRUE(p.state.phi.is_zero());
    EXPECT_EQ(p.report.E_s, 0.0);
  }
  EXPECT_DOUBLE_EQ(res.final_state().t, 0.1);
}

TEST(Integrate, ObserverStopsEarly) {
  SolverConfig cfg = config(16);
  cfg.t_end = 0.5;
  int calls = 0;
  const IntegrationResult res = integrate(exp_cos(cfg.space(), 0.05), cfg, [&](const TrajectoryPoint&) {
    return ++calls < 3;
  });
  EXPECT_EQ(calls, 3);
  EXPECT_EQ(res.outcome, Outcome::completed);
  EXPECT_LT(res.final_state().t, 0.5);
}

TEST(Integrate, PositivityBreachHalts) {
  SolverConfig cfg = config(16);
  cfg.t_end = 0.1;
  const IntegrationResult res = integrate(single_mode(cfg.space(), 2, 5.0), cfg);
  EXPECT_EQ(res.outcome, Outcome::continuation_halt);
  ASSERT_EQ(res.trajectory.size(), 1u);
  EXPECT_FALSE(res.trajectory.back().report.positivity_ok());
  EXPECT_THROW(evolve(single_mode(cfg.space(), 2, 5.0), cfg), ContinuationHalt);
}

TEST(EvolveFixed, StepCountAndConsistency) {
  SolverConfig cfg = config(16);
  const PeriodicField phi0 = exp_cos(cfg.space(), 0.05);
  const Stepper st(cfg);
  PeriodicField manual = phi0;
  for (int i = 0; i < 4; ++i) manual = st.step(manual, 0.025);
  EXPECT_LE(max_diff(evolve_fixed(phi0, cfg, 0.1, 0.025), manual), 0.0);
}
