#pragma once

// Experiment batteries: Galerkin/temporal convergence, Lipschitz stability,
// Bona-Smith smoothing rates and the para-product identity residuals.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sqgfront/evolution.hpp"

namespace sqgfront {

/// Least-squares slope of log y against log x; NaN if any value is not positive.
double loglog_slope(std::span<const double> x, std::span<const double> y);

using Generator = std::function<PeriodicField(const SpectralSpace&)>;

struct SpatialRow {
  int n_coarse;
  int n_fine;
  /// ||phi^{n_fine}(T) - phi^{n_coarse}(T)||_{H^2}.
  double diff;
  /// diff / previous diff (NaN on the first row).
  double ratio;
  std::string status;
};

struct TemporalRow {
  double dt;
  /// ||phi_dt(T) - phi_{dt'}(T)||_{H^2} with dt' the next smaller step.
  double diff;
  /// previous diff / diff, ~16 for a fourth-order scheme (NaN on the first row).
  double ratio;
  std::string status;
};

struct ConvergenceTable {
  std::vector<SpatialRow> spatial;
  std::vector<TemporalRow> temporal;
};

/// Runs the generator's data to cfg.t_end for every N in n_list (fixed dt of the finest N)
/// and for every dt in dt_list (at cfg.N). Failed cells are recorded in the status column.
ConvergenceTable convergence_study(const Generator& initial, const SolverConfig& cfg, std::vector<int> n_list,
                                   std::vector<double> dt_list);

struct StabilityReport {
  double r = 0.0;
  std::vector<double> times;
  /// ||phi(t) - psi(t)||_{H^r}, inhomogeneous norm.
  std::vector<double> distances;
  double initial_distance = 0.0;
  /// max_t dist(t) / dist(0); 1 if both solutions coincide.
  double M = 1.0;
  Outcome outcome = Outcome::completed;
  std::string message;
};

/// Co-evolves phi0 and psi0 to cfg.t_end with the same steps, sampling every monitor_cadence steps.
StabilityReport stability_experiment(const PeriodicField& phi0, const PeriodicField& psi0, double r,
                                     const SolverConfig& cfg);

struct BonaSmithRow {
  int N;
  /// ||f_N - f||_{H^2}.
  double tail;
  /// ||f_N||_{H^{s+1+delta}}.
  double smooth;
  double product;
};

struct BonaSmithTable {
  double s;
  double delta;
  std::vector<BonaSmithRow> rows;
  double slope_tail;
  double slope_smooth;
  double slope_product;
};

/// f_N = J_N f for each N in n_list; f lives on its own (reference) space.
BonaSmithTable bona_smith_table(const PeriodicField& f, double s, double delta, const std::vector<int>& n_list);

struct IdentityRow {
  std::string identity;
  double eps;
  int K;
  double residual;
  double slope;
};

struct IdentityOptions {
  std::vector<int> k_list{16, 32, 64, 128};
  std::vector<double> eps_list{0.1};
  /// Order for the |D|^s expansion and the triple-product norm.
  double s = 4.0;
  /// Amplitude of every test field.
  double amp = 1.0;
};

/// Residual-decay tables with u = amp cos x and v = amp cos Kx on N = 2K:
///   lemma31      ||L(uv) - expansion||_{H^0}
///   lemma33      ||.||_{H^0} / ||v||_{H^s}
///   corollary32  defect ratio for amp cos Kx
///   lemma32      triple-product ratio for (u, amp cos 2x, v)
/// The slope column repeats the group's fitted log-log slope.
std::vector<IdentityRow> identity_battery(const IdentityOptions& options);

}  // namespace sqgfront
