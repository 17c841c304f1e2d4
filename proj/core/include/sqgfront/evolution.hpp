#pragma once

// Galerkin truncation of the cubic SQG-front equation
//
//   phi_t + (1/2) d_x { phi^2 L phi_xx - phi L (phi^2)_xx + (1/3) L (phi^3)_xx } = 2 L phi_x
//
// and its alpha-family generalization phi_t = b B_alpha phi_x - a F_alpha(phi), where
// F_alpha is the flux above with L d_x^2 replaced by A_alpha = d_x^2 B_alpha.

#include <functional>
#include <string>
#include <vector>

#include "sqgfront/energy.hpp"
#include "sqgfront/paraproduct.hpp"
#include "sqgfront/spectral.hpp"

namespace sqgfront {

enum class Integrator {
  ifrk4,  ///< RK4 in the frame rotated by the exact linear propagator (Lawson)
  rk4     ///< classical RK4 on the full right-hand side
};

struct SolverConfig {
  int N = 64;
  double s = 4.0;
  /// Time step; 0 selects 0.5 / (N log(N + 1)).
  double dt = 0.0;
  double t_end = 1.0;
  double eps = 0.1;
  Integrator integrator = Integrator::ifrk4;
  double alpha = 1.0;
  /// Flux and dispersion constants. At alpha = 1 they must be 1 and 2.
  double a_alpha = 1.0;
  double b_alpha = 2.0;
  ParaproductPrefactor prefactor = ParaproductPrefactor::unit;
  double positivity_threshold = 1e-8;
  /// Steps between energy reports.
  int monitor_cadence = 10;
  /// Relative energy jump between reports that triggers a rewind with dt / 2.
  double energy_jump = 0.1;
  int max_halvings = 8;
  /// false drops the nonlinear flux (linear dispersive run).
  bool nonlinear = true;

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
  double time_step() const;
  SpectralSpace space() const { return SpectralSpace(N); }
  WeylParaproduct paraproduct() const { return WeylParaproduct(CutoffChi(eps), prefactor); }
};

/// (1/2) d_x { phi^2 L phi_xx - phi L(phi^2)_xx + (1/3) L(phi^3)_xx }, projected to |xi| <= N.
PeriodicField flux(const PeriodicField& phi);
/// Same with L d_x^2 replaced by A_alpha = d_x^2 B_alpha.
PeriodicField flux_alpha(const PeriodicField& phi, double alpha);

/// J_N [ b B_alpha phi_x - a F_alpha(phi) ].
PeriodicField rhs(const PeriodicField& phi, const SolverConfig& cfg);

/// B(phi) = phi_x^2 - 3 phi phi_xx - 2 phi_xx L phi - 4 phi_x L phi_x.
PeriodicField b_field(const PeriodicField& phi);

/// [T_u, T_v] w = T_u T_v w - T_v T_u w.
PeriodicField commutator_bracket(const WeylParaproduct& para, const PeriodicField& u,
                                 const PeriodicField& v, const PeriodicField& w);

/// Terms of the para-differential form phi_t + d_x{ T_B phi / 2 + [T_phi_x, T_phi] phi_x } + R7
/// = L[(2 - T_phi_x^2) phi]_x of the alpha = 1 equation.
struct Decomposition {
  PeriodicField principal;  ///< L[(2 - T_phi_x^2) phi]_x
  PeriodicField transport;  ///< d_x{ T_B phi / 2 + [T_phi_x, T_phi] phi_x }
  PeriodicField loss;       ///< d_x L (T_phi_x^2 phi), the log-loss part of the principal term
  PeriodicField r7;         ///< flux - loss - transport

  /// principal - transport - r7.
  PeriodicField rhs() const;
};

Decomposition decompose(const PeriodicField& phi, const WeylParaproduct& para);
PeriodicField extract_r7(const PeriodicField& phi, const WeylParaproduct& para);

// ---------------------------------------------------------------------------
// Time stepping

/// Fixed-step integrator for one configuration.
class Stepper {
 public:
  explicit Stepper(const SolverConfig& cfg);

  /// One step of size h.
  PeriodicField step(const PeriodicField& phi, double h) const;
  const SolverConfig& config() const noexcept { return cfg_; }

 private:
  PeriodicField nonlinear(const PeriodicField& phi) const;
  PeriodicField propagate(const PeriodicField& phi, double h) const;

  SolverConfig cfg_;
  Multiplier dispersion_;          // B_alpha d_x
  std::vector<double> frequency_;  // b xi B_alpha(xi), xi = 0..N
};

struct SolverState {
  double t = 0.0;
  long step = 0;
  PeriodicField phi;
};

struct TrajectoryPoint {
  SolverState state;
  EnergyReport report;
};

enum class Outcome { completed, continuation_halt, blow_up };

struct IntegrationResult {
  std::vector<TrajectoryPoint> trajectory;
  Outcome outcome = Outcome::completed;
  std::string message;
  /// Number of dt halvings performed.
  int halvings = 0;
  double final_dt = 0.0;

  const SolverState& final_state() const { return trajectory.back().state; }
};

/// Called on each monitored point; returning false stops the integration early (completed).
using Observer = std::function<bool(const TrajectoryPoint&)>;

/// Advances phi0 to cfg.t_end, monitoring every cfg.monitor_cadence steps and at t_end.
/// Continuation-criterion breaches and blow-up end the run with the matching outcome;
/// the last point of the trajectory is the offending state.
IntegrationResult integrate(const PeriodicField& phi0, const SolverConfig& cfg,
                            const Observer& observer = {});

/// integrate() that throws ContinuationHalt / BlowUp instead of returning an outcome.
IntegrationResult evolve(const PeriodicField& phi0, const SolverConfig& cfg);

/// Fixed-step run without monitoring or adaptivity; exactly round((t_end) / dt) steps.
PeriodicField evolve_fixed(const PeriodicField& phi0, const SolverConfig& cfg, double t_end, double dt);

}  // namespace sqgfront
