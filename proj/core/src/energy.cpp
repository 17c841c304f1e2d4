#include "sqgfront/energy.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

EnergyReport fill(const PeriodicField& phi, double s, const WeylParaproduct& para, double threshold,
                  double t, bool throw_on_breach) {
  EnergyReport rep;
  rep.t = t;
  if (!phi.all_finite()) {
    rep.E_s = rep.hs = rep.opnorm = rep.margin = rep.w1inf = std::numeric_limits<double>::quiet_NaN();
    rep.flags = kBlowUp;
    return rep;
  }
  rep.hs = hs_norm(phi, s);
  rep.w1inf = wsigma_inf_norm(phi, 1);

  const WeightOperator w =
      WeightOperator::build(phi, 2.0 * s + 1.0, para, -std::numeric_limits<double>::infinity());
  rep.margin = w.margin();
  rep.opnorm = w.opnorm_squared();
  if (!std::isfinite(rep.hs)) rep.flags |= kBlowUp;
  if (!(rep.margin > threshold)) {
    if (throw_on_breach)
      throw NotPositiveDefinite("energy: 2 - T_{phi_x}^2 is not positive definite", rep.margin);
    rep.flags |= kPositivityBreach;
    rep.E_s = std::numeric_limits<double>::quiet_NaN();
    return rep;
  }

  const PeriodicField v = apply(Multiplier::abs_pow(phi.space(), s), phi);
  rep.E_s = inner_product(v, w.apply(v)).real();
  return rep;
}

}  // namespace

EnergyReport energy_report(const PeriodicField& phi, double s, const WeylParaproduct& para,
                           double positivity_threshold, double t) {
  if (!(s > 0.0)) throw DomainError("energy: s must be positive");
  return fill(phi, s, para, positivity_threshold, t, true);
}

EnergyReport monitor_report(const PeriodicField& phi, double s, const WeylParaproduct& para,
                            double positivity_threshold, double t) {
  if (!(s > 0.0)) throw DomainError("energy: s must be positive");
  return fill(phi, s, para, positivity_threshold, t, false);
}

bool sandwich_holds(const EnergyReport& report, double s, double slack) {
  if (!report.positivity_ok() || report.blow_up()) return false;
  const double base = 2.0 * std::numbers::pi * report.hs * report.hs;
  const double p = 2.0 * s + 1.0;
  const double lower = std::pow(report.margin, p) * base;
  const double upper = std::pow(2.0, p) * base;
  return report.E_s >= lower * (1.0 - slack) && report.E_s <= upper * (1.0 + slack);
}

ContinuationFlags continuation_check(const PeriodicField& phi, double s, const WeylParaproduct& para,
                                     double positivity_threshold) {
  ContinuationFlags flags;
  flags.hs_finite = phi.all_finite() && std::isfinite(hs_norm(phi, s));
  if (!flags.hs_finite) {
    flags.positive = false;
    return flags;
  }
  const double norm = operator_norm(para, apply(Multiplier::dx(phi.space()), phi));
  flags.positive = norm * norm < 2.0 - positivity_threshold;
  return flags;
}

}  // namespace sqgfront
