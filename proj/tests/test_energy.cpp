#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "sqgfront/energy.hpp"
#include "sqgfront/errors.hpp"
#include "sqgfront/initial_data.hpp"
#include "support.hpp"

using namespace sqgfront;
using sqgfront::test::random_field;

TEST(Energy, ZeroField) {
  const SpectralSpace sp(16);
  const EnergyReport r = energy_report(PeriodicField(sp), 4.0, WeylParaproduct{});
  EXPECT_EQ(r.E_s, 0.0);
  EXPECT_EQ(r.margin, 2.0);
  EXPECT_EQ(r.flags, 0u);
  EXPECT_TRUE(sandwich_holds(r, 4.0));
}

TEST(Energy, SmallAmplitudeLimit) {
  const SpectralSpace sp(16);
  const double s = 4.0;
  const int k = 3;
  for (double delta : {1e-2, 1e-3, 1e-4}) {
    const double limit = std::pow(2.0, 2 * s + 1) * std::numbers::pi * delta * delta * std::pow(k, 2 * s);
    const EnergyReport r = energy_report(single_mode(sp, k, delta), s, WeylParaproduct{});
    EXPECT_NEAR(r.E_s / limit, 1.0, 50.0 * delta * delta) << delta;
  }
}

TEST(Energy, PositiveAndSandwiched) {
  const SpectralSpace sp(24);
  for (std::uint64_t seed : {1, 2, 3}) {
    const EnergyReport r = energy_report(random_field(sp, seed, 0.02, 3.0), 4.0, WeylParaproduct{});
    EXPECT_GT(r.E_s, 0.0);
    EXPECT_LT(r.margin, 2.0);
    EXPECT_TRUE(sandwich_holds(r, 4.0));
  }
}

TEST(Energy, BreachReporting) {
  const SpectralSpace sp(16);
  const PeriodicField big = single_mode(sp, 2, 5.0);
  EXPECT_THROW(energy_report(big, 4.0, WeylParaproduct{}), NotPositiveDefinite);
  const EnergyReport r = monitor_report(big, 4.0, WeylParaproduct{});
  EXPECT_FALSE(r.positivity_ok());
  EXPECT_TRUE(std::isnan(r.E_s));
  EXPECT_LT(r.margin, 0.0);
}

TEST(Continuation, Flags) {
  const SpectralSpace sp(16);
  const WeylParaproduct para;
  EXPECT_TRUE(continuation_check(PeriodicField(sp), 4.0, para).ok());

  double amp = 0.01;
  while (continuation_check(single_mode(sp, 2, amp), 4.0, para).positive) amp *= 1.1;
  EXPECT_GE(operator_norm(para, apply(Multiplier::dx(sp), single_mode(sp, 2, amp))), std::sqrt(2.0 - 1e-8));
  EXPECT_LT(amp, 5.0);

  PeriodicField nan_field = single_mode(sp, 2, 0.1);
  nan_field.set_real_mode(3, std::numeric_limits<double>::quiet_NaN());
  const ContinuationFlags f = continuation_check(nan_field, 4.0, para);
  EXPECT_FALSE(f.hs_finite);
  EXPECT_FALSE(f.ok());
  EXPECT_TRUE(monitor_report(nan_field, 4.0, para).blow_up());
}
