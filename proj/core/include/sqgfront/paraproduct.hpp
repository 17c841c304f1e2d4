#pragma once

// Weyl para-products on the torus.
//
//   F(T_u v)(xi) = sum_{eta != 0} chi(|xi - eta| / |xi + eta|) u^(xi - eta) v^(eta),
//
// with chi(.) = 0 whenever xi + eta = 0. T_u is self-adjoint on L^2 when u is real.

#include <Eigen/Dense>

#include "sqgfront/spectral.hpp"

namespace sqgfront {

/// Smooth cutoff: 1 on [0, eps'], 0 on [eps, inf), eps' = 3 eps / 4.
class CutoffChi {
 public:
  explicit CutoffChi(double eps = 0.1);

  double eps() const noexcept { return eps_; }
  double eps_inner() const noexcept { return eps_inner_; }

  double operator()(double r) const noexcept;

  /// Monotone bridge h(t) = sigma(t) / (sigma(t) + sigma(1 - t)), sigma(t) = exp(-1/t) (t > 0).
  static double bridge(double t) noexcept;

 private:
  double eps_;
  double eps_inner_;
};

enum class ParaproductPrefactor {
  unit,           ///< no prefactor; keeps uv = T_u v + T_v u + R(u, v) with a small R
  inverse_two_pi  ///< literal 1/(2 pi) in front of the defining sum
};

class ParaOperatorMatrix;

class WeylParaproduct {
 public:
  explicit WeylParaproduct(CutoffChi chi = CutoffChi{},
                           ParaproductPrefactor prefactor = ParaproductPrefactor::unit);

  const CutoffChi& chi() const noexcept { return chi_; }
  ParaproductPrefactor prefactor() const noexcept { return prefactor_; }

  /// Kernel weight multiplying u^(xi - eta) v^(eta); zero for eta = 0 or xi + eta = 0.
  double weight(int xi, int eta) const noexcept;

  /// T_u v by direct summation over retained modes.
  PeriodicField apply(const PeriodicField& u, const PeriodicField& v) const;

  /// Bony remainder R(u, v) = J_N(uv) - T_u v - T_v u.
  PeriodicField remainder(const PeriodicField& u, const PeriodicField& v) const;

  /// Matrix of T_u on the nonzero modes.
  ParaOperatorMatrix matrix(const PeriodicField& u) const;

 private:
  CutoffChi chi_;
  ParaproductPrefactor prefactor_;
  double scale_;
};

/// Dense matrix of T_u on modes xi, eta in {-N..N} \ {0}.
///
/// Row/column order is -N, ..., -1, 1, ..., N.
class ParaOperatorMatrix {
 public:
  ParaOperatorMatrix(SpectralSpace space, Eigen::MatrixXcd entries);

  const SpectralSpace& space() const noexcept { return space_; }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }
  Complex operator()(int xi, int eta) const { return entries_(index(xi), index(eta)); }

  static int index(int xi, int max_mode) noexcept { return xi < 0 ? xi + max_mode : xi + max_mode - 1; }
  static int mode(int index, int max_mode) noexcept { return index < max_mode ? index - max_mode : index - max_mode + 1; }
  int index(int xi) const noexcept { return index(xi, space_.max_mode()); }

  /// max |M - M^*| entrywise.
  double hermitian_defect() const;

  PeriodicField apply(const PeriodicField& v) const;

 private:
  SpectralSpace space_;
  Eigen::MatrixXcd entries_;
};

/// Nonzero-mode coefficients of a field as a column vector (ordering of ParaOperatorMatrix).
Eigen::VectorXcd to_mode_vector(const PeriodicField& u);
/// Inverse of to_mode_vector; the mean is set to `mean`.
PeriodicField from_mode_vector(const SpectralSpace& space, const Eigen::VectorXcd& modes,
                               Complex mean = 0.0);

/// ||T_u||_{L^2 -> L^2}: largest |eigenvalue| of the Hermitian matrix of T_u.
double operator_norm(const WeylParaproduct& para, const PeriodicField& u);

// ---------------------------------------------------------------------------
// Residuals of the para-differential expansion identities.

/// || L(uv) - sum of the four-term expansions in both factors - L R(u, v) ||_{H^0}.
double lemma31_residual(const WeylParaproduct& para, const PeriodicField& u, const PeriodicField& v);

/// ||L u^2 - 2 u L u||_{H^s} / ((||u||_inf + ||Lu||_inf) ||u||_{H^s}); 0 for u = 0.
double corollary32_defect(const PeriodicField& u, double s);

/// || |D|^s T_u v - T_u |D|^s v - s T_{Du} |D|^{s-2} D v - s(s-1)/2 T_{|D|^2 u} |D|^{s-2} v ||_{H^0}.
double lemma33_residual(const WeylParaproduct& para, const PeriodicField& u, const PeriodicField& v,
                        double s);

struct TripleProductResidual {
  double residual;  ///< ||L(uvw) - cyclic expansion||_{H^{s+2}}
  double scale;     ///< (sum ||.||_{W^{3,inf}})^2 (sum ||.||_{H^s})
  double ratio() const noexcept { return scale > 0.0 ? residual / scale : 0.0; }
};

/// Remainder of the cyclic three-factor expansion of L(uvw).
TripleProductResidual lemma32_residual(const WeylParaproduct& para, const PeriodicField& u,
                                       const PeriodicField& v, const PeriodicField& w, double s);

}  // namespace sqgfront
