#include "sqgfront/paraproduct.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sqgfront/errors.hpp"

namespace sqgfront {

CutoffChi::CutoffChi(double eps) : eps_(eps), eps_inner_(0.75 * eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw DomainError("CutoffChi: eps must lie in (0, 1/2)");
}

double CutoffChi::bridge(double t) noexcept {
  auto sigma = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = sigma(t);
  const double b = sigma(1.0 - t);
  return a / (a + b);
}

double CutoffChi::operator()(double r) const noexcept {
  if (r <= eps_inner_) return 1.0;
  if (r >= eps_) return 0.0;
  return bridge((eps_ - r) / (eps_ - eps_inner_));
}

// ---------------------------------------------------------------------------

WeylParaproduct::WeylParaproduct(CutoffChi chi, ParaproductPrefactor prefactor)
    : chi_(chi),
      prefactor_(prefactor),
      scale_(prefactor == ParaproductPrefactor::unit ? 1.0 : 0.5 / std::numbers::pi) {}

double WeylParaproduct::weight(int xi, int eta) const noexcept {
  const int sum = xi + eta;
  if (eta == 0 || sum == 0) return 0.0;
  const double r = static_cast<double>(std::abs(xi - eta)) / std::abs(sum);
  if (r >= chi_.eps()) return 0.0;
  return scale_ * chi_(r);
}

PeriodicField WeylParaproduct::apply(const PeriodicField& u, const PeriodicField& v) const {
  if (!(u.space() == v.space())) throw DimensionError("paraproduct: fields on different spaces");
  const int n = u.max_mode();
  PeriodicField out(u.space());
  const bool real = u.is_real() && v.is_real();
  const int xi_min = real ? 1 : -n;
  for (int xi = xi_min; xi <= n; ++xi) {
    if (xi == 0) continue;
    Complex acc = 0.0;
    const int lo = std::max(-n, xi - n);
    const int hi = std::min(n, xi + n);
    for (int eta = lo; eta <= hi; ++eta) {
      const double w = weight(xi, eta);
      if (w != 0.0) acc += w * u[xi - eta] * v[eta];
    }
    if (real)
      out.set_real_mode(xi, acc);
    else
      out.at(xi) = acc;
  }
  return out;
}

PeriodicField WeylParaproduct::remainder(const PeriodicField& u, const PeriodicField& v) const {
  if (!(u.space() == v.space())) throw DimensionError("remainder: fields on different spaces");
  const int n = u.max_mode();
  PeriodicField out(u.space());
  const bool real = u.is_real() && v.is_real();
  for (int xi = real ? 0 : -n; xi <= n; ++xi) {
    Complex acc = 0.0;
    for (int eta = std::max(-n, xi - n); eta <= std::min(n, xi + n); ++eta) {
      const double w = 1.0 - weight(xi, eta) - weight(xi, xi - eta);
      if (w != 0.0) acc += w * u[xi - eta] * v[eta];
    }
    if (real)
      out.set_real_mode(xi, acc);
    else
      out.at(xi) = acc;
  }
  return out;
}

ParaOperatorMatrix WeylParaproduct::matrix(const PeriodicField& u) const {
  const int n = u.max_mode();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const int xi = ParaOperatorMatrix::mode(i, n);
    for (int j = 0; j < 2 * n; ++j) {
      const int eta = ParaOperatorMatrix::mode(j, n);
      const double w = weight(xi, eta);
      if (w != 0.0) m(i, j) = w * u[xi - eta];
    }
  }
  return ParaOperatorMatrix(u.space(), std::move(m));
}

// ---------------------------------------------------------------------------

ParaOperatorMatrix::ParaOperatorMatrix(SpectralSpace space, Eigen::MatrixXcd entries)
    : space_(space), entries_(std::move(entries)) {
  const int dim = 2 * space_.max_mode();
  if (entries_.rows() != dim || entries_.cols() != dim)
    throw DimensionError("ParaOperatorMatrix: expected a 2N x 2N matrix");
}

double ParaOperatorMatrix::hermitian_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

PeriodicField ParaOperatorMatrix::apply(const PeriodicField& v) const {
  if (!(v.space() == space_)) throw DimensionError("ParaOperatorMatrix::apply: space mismatch");
  return from_mode_vector(space_, entries_ * to_mode_vector(v));
}

Eigen::VectorXcd to_mode_vector(const PeriodicField& u) {
  const int n = u.max_mode();
  Eigen::VectorXcd x(2 * n);
  for (int i = 0; i < 2 * n; ++i) x(i) = u[ParaOperatorMatrix::mode(i, n)];
  return x;
}

PeriodicField from_mode_vector(const SpectralSpace& space, const Eigen::VectorXcd& modes,
                               Complex mean) {
  const int n = space.max_mode();
  if (modes.size() != 2 * n) throw DimensionError("from_mode_vector: expected 2N entries");
  PeriodicField out(space);
  out.at(0) = mean;
  for (int i = 0; i < 2 * n; ++i) out.at(ParaOperatorMatrix::mode(i, n)) = modes(i);
  return out;
}

double operator_norm(const WeylParaproduct& para, const PeriodicField& u) {
  if (u.is_zero()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(para.matrix(u).entries(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("operator_norm: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

}  // namespace sqgfront
