#pragma once

// Weighted energy E^(s)(phi) = int |D|^s phi (2 - T_{phi_x}^2)^{2s+1} |D|^s phi dx and
// the continuation monitors.

#include <cstdint>

#include "sqgfront/calculus.hpp"
#include "sqgfront/paraproduct.hpp"
#include "sqgfront/spectral.hpp"

namespace sqgfront {

enum ReportFlag : std::uint32_t {
  kPositivityBreach = 1u,
  kBlowUp = 2u,
  kDtHalved = 4u,
};

struct EnergyReport {
  double t = 0.0;
  double E_s = 0.0;
  /// ||phi||_{H^s} (homogeneous).
  double hs = 0.0;
  /// ||T_{phi_x}||^2.
  double opnorm = 0.0;
  /// Smallest eigenvalue of 2 - T_{phi_x}^2.
  double margin = 2.0;
  /// ||phi||_{W^{1,inf}}.
  double w1inf = 0.0;
  std::uint32_t flags = 0;

  bool positivity_ok() const noexcept { return (flags & kPositivityBreach) == 0; }
  bool blow_up() const noexcept { return (flags & kBlowUp) != 0; }
};

/// E^(s) with report fields filled. Throws NotPositiveDefinite if the margin is at or below
/// the threshold.
EnergyReport energy_report(const PeriodicField& phi, double s, const WeylParaproduct& para,
                           double positivity_threshold = kDefaultPositivityThreshold, double t = 0.0);

/// Non-throwing variant used by monitors: breaches are reported through the flags and
/// E_s is NaN when the weight is not positive.
EnergyReport monitor_report(const PeriodicField& phi, double s, const WeylParaproduct& para,
                            double positivity_threshold = kDefaultPositivityThreshold, double t = 0.0);

/// Sandwich m^{2s+1} 2pi ||phi||_{H^s}^2 <= E <= 2^{2s+1} 2pi ||phi||_{H^s}^2, with relative slack.
bool sandwich_holds(const EnergyReport& report, double s, double slack = 1e-12);

struct ContinuationFlags {
  bool hs_finite = true;
  bool positive = true;
  bool ok() const noexcept { return hs_finite && positive; }
};

ContinuationFlags continuation_check(const PeriodicField& phi, double s, const WeylParaproduct& para,
                                     double positivity_threshold = kDefaultPositivityThreshold);

}  // namespace sqgfront
