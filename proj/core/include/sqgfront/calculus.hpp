#pragma once

// Functional calculus for the weight 2 - T_{phi_x}^2 on the truncated space.
//
// The primary realization diagonalizes the Hermitian matrix of T_{phi_x}; the
// Helffer-Sjostrand contour integral is kept as an independent cross-check.

#include <Eigen/Dense>

#include <array>
#include <span>
#include <vector>

#include "sqgfront/paraproduct.hpp"
#include "sqgfront/spectral.hpp"

namespace sqgfront {

inline constexpr double kDefaultPositivityThreshold = 1e-8;

/// (2 - T_{phi_x}^2)^p realized through the eigendecomposition of T_{phi_x}.
///
/// Eigenvalues mu_k = 2 - lambda_k^2 are kept in ascending order; each eigenvector
/// is normalized so that its first nonzero component is real and positive. The
/// mean mode is not coupled by T and carries the scalar 2^p.
class WeightOperator {
 public:
  /// Throws NotPositiveDefinite if min mu_k <= positivity_threshold.
  static WeightOperator build(const PeriodicField& phi, double power, const WeylParaproduct& para,
                              double positivity_threshold = kDefaultPositivityThreshold);

  /// Same eigenbasis, different exponent.
  WeightOperator with_power(double power) const;

  PeriodicField apply(const PeriodicField& v) const;

  double power() const noexcept { return power_; }
  /// Positivity margin m = min_k mu_k.
  double margin() const noexcept { return mu_.front(); }
  /// ||T_{phi_x}||^2 = max_k lambda_k^2.
  double opnorm_squared() const noexcept { return 2.0 - mu_.front(); }
  std::span<const double> eigenvalues() const noexcept { return mu_; }
  const Eigen::MatrixXcd& eigenvectors() const noexcept { return vectors_; }
  const SpectralSpace& space() const noexcept { return space_; }

  /// Dense matrix of W_p on the nonzero modes.
  Eigen::MatrixXcd dense() const;

 private:
  WeightOperator(SpectralSpace space, std::vector<double> mu, Eigen::MatrixXcd vectors, double power);

  SpectralSpace space_;
  std::vector<double> mu_;
  Eigen::MatrixXcd vectors_;
  double power_;
  Eigen::VectorXd scaled_;  // mu_k^power
};

/// Matrix of 2 - T_{phi_x}^2 on the nonzero modes, formed by direct multiplication.
Eigen::MatrixXcd weight_base_matrix(const PeriodicField& phi, const WeylParaproduct& para);

// ---------------------------------------------------------------------------
// Helffer-Sjostrand oracle

/// Quadrature parameters for f(A) = -(1/pi) int dbar f~(z) (z - A)^{-1} dalpha dbeta,
/// f~(z) = (f + i beta f' - beta^2 f''/2) chi0(beta), f(alpha) = |alpha|^p chi1(alpha).
struct HSQuadrature {
  /// chi0 = 1 for |beta| <= radius / 2 and 0 for |beta| >= radius.
  double cutoff_radius = 1.0;
  /// |Im z| > regularization.
  double regularization = 1e-4;
  /// beta panels double in width from the regularization up to this width.
  double max_beta_panel = 0.025;
  /// Gauss-Legendre panel width in alpha is min(max_alpha_panel, beta_resolution * |beta|).
  double max_alpha_panel = 0.02;
  double beta_resolution = 1.0;
  /// Upper edge of chi1: chi1 = 1 on [lower, 2] and 0 above 2 + upper_margin.
  double upper_margin = 0.5;
};

/// Almost-analytic extension data of f = |alpha|^p chi1(alpha) with chi1 = 1 on [lower, 2].
class AlmostAnalyticExtension {
 public:
  AlmostAnalyticExtension(double power, double lower, const HSQuadrature& quad);

  /// dbar f~ at z = alpha + i beta.
  Complex dbar(double alpha, double beta) const;
  /// f and its first three derivatives at alpha.
  std::array<double, 4> jet(double alpha) const;

  double support_begin() const noexcept { return lo_ / 2.0; }
  double support_end() const noexcept { return 2.0 + upper_margin_; }

 private:
  double power_;
  double lo_;
  double upper_margin_;
  double radius_;
};

/// (2 - T_{phi_x}^2)^p v by contour quadrature with tridiagonal resolvent solves.
/// Intended for N <= 16.
PeriodicField hs_apply(const PeriodicField& phi, double power, const PeriodicField& v,
                       const WeylParaproduct& para, const HSQuadrature& quad = {},
                       double positivity_threshold = kDefaultPositivityThreshold);

/// max over alpha of |dbar f~(alpha + i beta)| / beta^2 at a fixed beta.
double dbar_ratio(double power, double lower, double beta, const HSQuadrature& quad = {});

// ---------------------------------------------------------------------------
// Time derivative of the fractional weight

enum class WeightRoute {
  direct,   ///< W_s from the eigendecomposition
  composed  ///< W_s = W_{s-1} o W_1
};

/// || [W_s(phi + h phi_t) - W_s(phi - h phi_t)] psi / 2h
///     + s W_{s-1}(phi) (T_{phi_x} T_{phi_xt} + T_{phi_xt} T_{phi_x}) psi ||_{H^0}
/// for psi fixed in time; the value approximates the commutator remainder as h -> 0.
double weight_time_derivative_check(const PeriodicField& phi, const PeriodicField& phi_t, double s,
                                    const PeriodicField& psi, double h, const WeylParaproduct& para,
                                    WeightRoute route = WeightRoute::direct,
                                    double positivity_threshold = kDefaultPositivityThreshold);

}  // namespace sqgfront
