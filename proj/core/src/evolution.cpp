#include "sqgfront/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

// A_alpha = d_x^2 B_alpha.
Multiplier a_symbol(const SpectralSpace& space, double alpha) {
  return Multiplier::dx(space, 2) * Multiplier::b_alpha(space, alpha);
}

PeriodicField flux_with(const PeriodicField& phi, double alpha) {
  const SpectralSpace& sp = phi.space();
  const SpectralSpace wide(2 * sp.max_mode());
  const Multiplier a = a_symbol(sp, alpha);

  // phi A(phi^2) needs every mode of phi^2, so that product is formed on the 2N space.
  const PeriodicField lifted = change_space(phi, wide);
  const PeriodicField middle =
      change_space(multiply(lifted, apply(a_symbol(wide, alpha), multiply(lifted, lifted))), sp);

  PeriodicField inner = multiply(phi, phi, apply(a, phi));
  inner -= middle;
  inner += (1.0 / 3.0) * apply(a, multiply(phi, phi, phi));
  return 0.5 * apply(Multiplier::dx(sp), inner);
}

void require_solution_field(const PeriodicField& phi, const char* where) {
  if (!phi.is_real()) throw PreconditionError(std::string(where) + ": field must be real");
  if (!phi.zero_mean()) throw PreconditionError(std::string(where) + ": field must have zero mean");
}

}  // namespace

void SolverConfig::validate() const {
  if (N < 8) throw DomainError("solver: N must be at least 8");
  if (!(s > 0.0)) throw DomainError("solver: s must be positive");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("solver: dt must be positive (or 0 for the default)");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw DomainError("solver: t_end must be positive");
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("solver: eps must lie in (0, 1/2)");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("solver: alpha must lie in (0, 2]");
  if (alpha == 1.0 && (a_alpha != 1.0 || b_alpha != 2.0))
    throw DomainError("solver: alpha = 1 fixes a_alpha = 1 and b_alpha = 2");
  if (!std::isfinite(a_alpha) || !std::isfinite(b_alpha)) throw DomainError("solver: a_alpha, b_alpha must be finite");
  if (!(positivity_threshold >= 0.0)) throw DomainError("solver: delta_pos must be non-negative");
  if (monitor_cadence < 1) throw DomainError("solver: monitor cadence must be at least 1");
  if (!(energy_jump > 0.0)) throw DomainError("solver: energy_jump must be positive");
  if (max_halvings < 0) throw DomainError("solver: max_halvings must be non-negative");
}

double SolverConfig::time_step() const {
  if (dt > 0.0) return dt;
  return 0.5 / (N * std::log(N + 1.0));
}

PeriodicField flux(const PeriodicField& phi) { return flux_with(phi, 1.0); }

PeriodicField flux_alpha(const PeriodicField& phi, double alpha) { return flux_with(phi, alpha); }

PeriodicField rhs(const PeriodicField& phi, const SolverConfig& cfg) {
  const SpectralSpace& sp = phi.space();
  PeriodicField out = cfg.b_alpha * apply(Multiplier::b_alpha(sp, cfg.alpha) * Multiplier::dx(sp), phi);
  if (cfg.nonlinear) out -= cfg.a_alpha * flux_with(phi, cfg.alpha);
  return out;
}

PeriodicField b_field(const PeriodicField& phi) {
  const SpectralSpace& sp = phi.space();
  const Multiplier log = Multiplier::log_abs(sp);
  const PeriodicField px = apply(Multiplier::dx(sp), phi);
  const PeriodicField pxx = apply(Multiplier::dx(sp, 2), phi);
  PeriodicField out = multiply(px, px);
  out -= 3.0 * multiply(phi, pxx);
  out -= 2.0 * multiply(pxx, apply(log, phi));
  out -= 4.0 * multiply(px, apply(log, px));
  return out;
}

PeriodicField commutator_bracket(const WeylParaproduct& para, const PeriodicField& u,
                                 const PeriodicField& v, const PeriodicField& w) {
  return para.apply(u, para.apply(v, w)) - para.apply(v, para.apply(u, w));
}

PeriodicField Decomposition::rhs() const { return principal - transport - r7; }

Decomposition decompose(const PeriodicField& phi, const WeylParaproduct& para) {
  const SpectralSpace& sp = phi.space();
  const Multiplier dx = Multiplier::dx(sp);
  const Multiplier log_dx = Multiplier::log_abs(sp) * dx;
  const PeriodicField px = apply(dx, phi);

  PeriodicField loss = apply(log_dx, para.apply(px, para.apply(px, phi)));
  PeriodicField principal = 2.0 * apply(log_dx, phi) - loss;
  PeriodicField transport =
      apply(dx, 0.5 * para.apply(b_field(phi), phi) + commutator_bracket(para, px, phi, px));
  PeriodicField r7 = flux(phi) - loss - transport;
  return {std::move(principal), std::move(transport), std::move(loss), std::move(r7)};
}

PeriodicField extract_r7(const PeriodicField& phi, const WeylParaproduct& para) {
  return decompose(phi, para).r7;
}

// ---------------------------------------------------------------------------

Stepper::Stepper(const SolverConfig& cfg)
    : cfg_(cfg),
      dispersion_(Multiplier::b_alpha(cfg.space(), cfg.alpha) * Multiplier::dx(cfg.space())) {
  cfg_.validate();
  frequency_.resize(static_cast<std::size_t>(cfg_.N) + 1);
  for (int xi = 0; xi <= cfg_.N; ++xi)
    frequency_[static_cast<std::size_t>(xi)] = cfg_.b_alpha * dispersion_(xi).imag();
}

PeriodicField Stepper::nonlinear(const PeriodicField& phi) const {
  if (!cfg_.nonlinear) return PeriodicField(phi.space());
  return -cfg_.a_alpha * flux_with(phi, cfg_.alpha);
}

PeriodicField Stepper::propagate(const PeriodicField& phi, double h) const {
  PeriodicField out = phi;
  for (int xi = 1; xi <= cfg_.N; ++xi) {
    const double theta = frequency_[static_cast<std::size_t>(xi)] * h;
    const Complex e(std::cos(theta), std::sin(theta));
    out.at(xi) = phi[xi] * e;
    out.at(-xi) = phi[-xi] * std::conj(e);
  }
  return out;
}

PeriodicField Stepper::step(const PeriodicField& phi, double h) const {
  if (!(phi.space() == cfg_.space())) throw DimensionError("step: field space does not match N");
  if (cfg_.integrator == Integrator::rk4) {
    auto f = [&](const PeriodicField& u) {
      PeriodicField out = cfg_.b_alpha * apply(dispersion_, u);
      if (cfg_.nonlinear) out += nonlinear(u);
      return out;
    };
    const PeriodicField k1 = f(phi);
    const PeriodicField k2 = f(phi + (0.5 * h) * k1);
    const PeriodicField k3 = f(phi + (0.5 * h) * k2);
    const PeriodicField k4 = f(phi + h * k3);
    return phi + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
  }

  if (!cfg_.nonlinear) return propagate(phi, h);
  const double half = 0.5 * h;
  const PeriodicField k1 = nonlinear(phi);
  const PeriodicField k2 = nonlinear(propagate(phi + half * k1, half));
  const PeriodicField p_half = propagate(phi, half);
  const PeriodicField k3 = nonlinear(p_half + half * k2);
  const PeriodicField k4 = nonlinear(propagate(phi, h) + h * propagate(k3, half));
  return propagate(phi, h) + (h / 6.0) * (propagate(k1, h) + 2.0 * propagate(k2 + k3, half) + k4);
}

// ---------------------------------------------------------------------------

IntegrationResult integrate(const PeriodicField& phi0, const SolverConfig& cfg, const Observer& observer) {
  cfg.validate();
  if (!(phi0.space() == cfg.space())) throw DimensionError("integrate: initial data space does not match N");
  require_solution_field(phi0, "integrate");

  const Stepper stepper(cfg);
  const WeylParaproduct para = cfg.paraproduct();
  IntegrationResult result;

  auto report = [&](const SolverState& st) {
    return monitor_report(st.phi, cfg.s, para, cfg.positivity_threshold, st.t);
  };
  auto emit = [&](TrajectoryPoint point) {
    result.trajectory.push_back(std::move(point));
    return observer ? observer(result.trajectory.back()) : true;
  };

  SolverState state{0.0, 0, phi0};
  EnergyReport rep = report(state);
  const bool go_on = emit({state, rep});
  if (!rep.positivity_ok()) {
    result.outcome = Outcome::continuation_halt;
    result.message = "initial data violate the positivity condition";
    return result;
  }
  if (!go_on) return result;

  double h = cfg.dt > 0.0 ? cfg.t_end / std::max(1.0, std::round(cfg.t_end / cfg.dt))
                          : cfg.t_end / std::ceil(cfg.t_end / cfg.time_step());
  long remaining = std::lround(cfg.t_end / h);
  TrajectoryPoint snapshot{state, rep};
  long since_base = 0;     // steps since snapshot
  std::uint32_t pending = 0;

  while (remaining > 0) {
    state.phi = stepper.step(state.phi, h);
    ++state.step;
    ++since_base;
    --remaining;
    state.t = remaining == 0 ? cfg.t_end : snapshot.state.t + static_cast<double>(since_base) * h;

    if (!state.phi.all_finite()) {
      rep = report(state);
      rep.flags |= kBlowUp;
      emit({state, rep});
      result.outcome = Outcome::blow_up;
      std::ostringstream msg;
      msg << "non-finite coefficients at t = " << state.t;
      result.message = msg.str();
      break;
    }
    if (since_base % cfg.monitor_cadence != 0 && remaining != 0) continue;

    rep = report(state);
    if (rep.blow_up()) {
      emit({state, rep});
      result.outcome = Outcome::blow_up;
      result.message = "norm overflow";
      break;
    }
    if (!rep.positivity_ok()) {
      emit({state, rep});
      result.outcome = Outcome::continuation_halt;
      std::ostringstream msg;
      msg << "positivity margin " << rep.margin << " at t = " << state.t;
      result.message = msg.str();
      break;
    }
    const double e0 = snapshot.report.E_s;
    if (e0 > 0.0 && std::abs(rep.E_s - e0) > cfg.energy_jump * e0 && result.halvings < cfg.max_halvings) {
      remaining = 2 * (remaining + since_base);
      h *= 0.5;
      since_base = 0;
      state = snapshot.state;
      ++result.halvings;
      pending |= kDtHalved;
      continue;
    }
    rep.flags |= pending;
    pending = 0;
    snapshot = {state, rep};
    since_base = 0;
    if (!emit(snapshot)) break;
  }
  result.final_dt = h;
  return result;
}

IntegrationResult evolve(const PeriodicField& phi0, const SolverConfig& cfg) {
  IntegrationResult result = integrate(phi0, cfg);
  if (result.outcome == Outcome::continuation_halt) throw ContinuationHalt(result.message);
  if (result.outcome == Outcome::blow_up) throw BlowUp(result.message);
  return result;
}

PeriodicField evolve_fixed(const PeriodicField& phi0, const SolverConfig& cfg, double t_end, double dt) {
  if (!(t_end > 0.0) || !(dt > 0.0)) throw DomainError("evolve_fixed: t_end and dt must be positive");
  require_solution_field(phi0, "evolve_fixed");
  const Stepper stepper(cfg);
  const long n = std::max(1L, std::lround(t_end / dt));
  const double h = t_end / static_cast<double>(n);
  PeriodicField phi = phi0;
  for (long k = 0; k < n; ++k) {
    phi = stepper.step(phi, h);
    if (!phi.all_finite()) throw BlowUp("evolve_fixed: non-finite coefficients");
  }
  return phi;
}

}  // namespace sqgfront
