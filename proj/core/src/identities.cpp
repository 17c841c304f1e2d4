#include <cmath>

#include "sqgfront/paraproduct.hpp"

namespace sqgfront {

namespace {

// T_b L a + T_{Db} D^{-1} a - 1/2 T_{D^2 b} D^{-2} a + 1/3 T_{D^3 b} D^{-3} a
PeriodicField log_expansion(const WeylParaproduct& para, const PeriodicField& a,
                            const PeriodicField& b) {
  const auto& sp = a.space();
  PeriodicField out = para.apply(b, apply(Multiplier::log_abs(sp), a));
  static constexpr double kTaylor[] = {1.0, -0.5, 1.0 / 3.0};
  for (int k = 1; k <= 3; ++k) {
    const PeriodicField dkb = apply(Multiplier::d(sp, k), b);
    const PeriodicField dinv = apply(Multiplier::inv_d_pow(sp, k), a);
    out += kTaylor[k - 1] * para.apply(dkb, dinv);
  }
  return out;
}

}  // namespace

double lemma31_residual(const WeylParaproduct& para, const PeriodicField& u, const PeriodicField& v) {
  const Multiplier log = Multiplier::log_abs(u.space());
  PeriodicField r = apply(log, multiply(u, v));
  r -= log_expansion(para, u, v);
  r -= log_expansion(para, v, u);
  r -= apply(log, para.remainder(u, v));
  return hs_norm(r, 0.0);
}

double corollary32_defect(const PeriodicField& u, double s) {
  if (u.is_zero()) return 0.0;
  const PeriodicField lu = apply(Multiplier::log_abs(u.space()), u);
  const PeriodicField defect =
      apply(Multiplier::log_abs(u.space()), multiply(u, u)) - 2.0 * multiply(u, lu);
  const double scale = (sup_norm(u) + sup_norm(lu)) * hs_norm(u, s);
  return scale > 0.0 ? hs_norm(defect, s) / scale : 0.0;
}

double lemma33_residual(const WeylParaproduct& para, const PeriodicField& u, const PeriodicField& v,
                        double s) {
  const auto& sp = u.space();
  PeriodicField r = apply(Multiplier::abs_pow(sp, s), para.apply(u, v));
  r -= para.apply(u, apply(Multiplier::abs_pow(sp, s), v));
  if (s != 0.0) {
    const Multiplier lower = Multiplier::abs_pow(sp, s - 2.0);
    r -= s * para.apply(apply(Multiplier::d(sp), u), apply(lower * Multiplier::d(sp), v));
    const double c2 = 0.5 * s * (s - 1.0);
    if (c2 != 0.0)
      r -= c2 * para.apply(apply(Multiplier::abs_pow(sp, 2.0), u), apply(lower, v));
  }
  return hs_norm(r, 0.0);
}

TripleProductResidual lemma32_residual(const WeylParaproduct& para, const PeriodicField& u,
                                       const PeriodicField& v, const PeriodicField& w, double s) {
  const auto& sp = u.space();
  const Multiplier log = Multiplier::log_abs(sp);
  const Multiplier d1 = Multiplier::d(sp, 1);
  const Multiplier d2 = Multiplier::d(sp, 2);
  const Multiplier dinv1 = Multiplier::inv_d_pow(sp, 1);
  const Multiplier dinv2 = Multiplier::inv_d_pow(sp, 2);

  // One cyclic term with `a` carrying the operator and (b, c) the low-frequency factors.
  auto cyclic_term = [&](const PeriodicField& a, const PeriodicField& b, const PeriodicField& c) {
    const PeriodicField db = apply(d1, b), dc = apply(d1, c);
    const PeriodicField d2b = apply(d2, b), d2c = apply(d2, c);
    const PeriodicField a1 = apply(dinv1, a), a2 = apply(dinv2, a);
    PeriodicField t = para.apply(b, para.apply(c, apply(log, a)));
    t += para.apply(db, para.apply(c, a1)) + para.apply(b, para.apply(dc, a1));
    t -= 0.5 * (para.apply(d2b, para.apply(c, a2)) + para.apply(d2c, para.apply(b, a2)) +
                2.0 * para.apply(db, para.apply(dc, a2)));
    return t;
  };

  PeriodicField r = apply(log, multiply(u, v, w));
  r -= cyclic_term(u, v, w);
  r -= cyclic_term(v, w, u);
  r -= cyclic_term(w, u, v);

  const double wsum = wsigma_inf_norm(u, 3) + wsigma_inf_norm(v, 3) + wsigma_inf_norm(w, 3);
  const double hsum = hs_norm(u, s) + hs_norm(v, s) + hs_norm(w, s);
  return {hs_norm(r, s + 2.0), wsum * wsum * hsum};
}

}  // namespace sqgfront
