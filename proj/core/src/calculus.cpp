#include "sqgfront/calculus.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

PeriodicField derivative(const PeriodicField& phi) { return apply(Multiplier::dx(phi.space()), phi); }

// Makes the first component of each column with |c| above a relative noise floor real positive.
void normalize_phases(Eigen::MatrixXcd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    const double floor = 1e-12 * col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double mag = std::abs(col(i));
      if (mag > floor) {
        col *= std::conj(col(i)) / mag;
        col(i) = mag;
        break;
      }
    }
  }
}

}  // namespace

WeightOperator::WeightOperator(SpectralSpace space, std::vector<double> mu, Eigen::MatrixXcd vectors,
                               double power)
    : space_(space), mu_(std::move(mu)), vectors_(std::move(vectors)), power_(power) {
  scaled_.resize(static_cast<Eigen::Index>(mu_.size()));
  for (std::size_t k = 0; k < mu_.size(); ++k)
    scaled_(static_cast<Eigen::Index>(k)) = std::pow(mu_[k], power_);
}

WeightOperator WeightOperator::build(const PeriodicField& phi, double power,
                                     const WeylParaproduct& para, double positivity_threshold) {
  if (!phi.is_real()) throw PreconditionError("build_weight: phi must be real");
  const int n = phi.max_mode();
  const ParaOperatorMatrix t = para.matrix(derivative(phi));

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(t.entries());
  if (solver.info() != Eigen::Success) throw NumericError("build_weight: eigensolver failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  // mu = 2 - lambda^2 <= 2 holds exactly in floating point.
  std::vector<double> mu_unsorted(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < 2 * n; ++k) mu_unsorted[static_cast<std::size_t>(k)] = 2.0 - lambda(k) * lambda(k);
  std::vector<int> order(static_cast<std::size_t>(2 * n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return mu_unsorted[static_cast<std::size_t>(a)] < mu_unsorted[static_cast<std::size_t>(b)];
  });

  std::vector<double> mu(order.size());
  Eigen::MatrixXcd vectors(2 * n, 2 * n);
  for (std::size_t k = 0; k < order.size(); ++k) {
    mu[k] = mu_unsorted[static_cast<std::size_t>(order[k])];
    vectors.col(static_cast<Eigen::Index>(k)) = solver.eigenvectors().col(order[k]);
  }
  normalize_phases(vectors);

  if (!(mu.front() > positivity_threshold)) {
    std::ostringstream msg;
    msg << "2 - T_{phi_x}^2 is not positive definite: margin " << mu.front()
        << " <= threshold " << positivity_threshold;
    throw NotPositiveDefinite(msg.str(), mu.front());
  }
  return WeightOperator(phi.space(), std::move(mu), std::move(vectors), power);
}

WeightOperator WeightOperator::with_power(double power) const {
  return WeightOperator(space_, mu_, vectors_, power);
}

PeriodicField WeightOperator::apply(const PeriodicField& v) const {
  if (!(v.space() == space_)) throw DimensionError("WeightOperator::apply: space mismatch");
  const Eigen::VectorXcd x = to_mode_vector(v);
  const Eigen::VectorXcd y = vectors_ * (scaled_.cast<Complex>().cwiseProduct(vectors_.adjoint() * x));
  return from_mode_vector(space_, y, std::pow(2.0, power_) * v[0]);
}

Eigen::MatrixXcd WeightOperator::dense() const {
  return vectors_ * scaled_.cast<Complex>().asDiagonal() * vectors_.adjoint();
}

Eigen::MatrixXcd weight_base_matrix(const PeriodicField& phi, const WeylParaproduct& para) {
  const Eigen::MatrixXcd t = para.matrix(derivative(phi)).entries();
  const Eigen::Index dim = t.rows();
  return 2.0 * Eigen::MatrixXcd::Identity(dim, dim) - t * t;
}

// ---------------------------------------------------------------------------

double weight_time_derivative_check(const PeriodicField& phi, const PeriodicField& phi_t, double s,
                                    const PeriodicField& psi, double h, const WeylParaproduct& para,
                                    WeightRoute route, double positivity_threshold) {
  if (!(h > 0.0)) throw DomainError("weight_time_derivative_check: h must be positive");

  auto weighted = [&](const PeriodicField& state) {
    if (route == WeightRoute::direct)
      return WeightOperator::build(state, s, para, positivity_threshold).apply(psi);
    const WeightOperator w1 = WeightOperator::build(state, 1.0, para, positivity_threshold);
    return w1.with_power(s - 1.0).apply(w1.apply(psi));
  };

  PeriodicField fd = weighted(phi + h * phi_t) - weighted(phi - h * phi_t);
  fd *= 0.5 / h;

  const PeriodicField phi_x = derivative(phi);
  const PeriodicField phi_xt = derivative(phi_t);
  const PeriodicField sym =
      para.apply(phi_x, para.apply(phi_xt, psi)) + para.apply(phi_xt, para.apply(phi_x, psi));
  const PeriodicField leading =
      WeightOperator::build(phi, s - 1.0, para, positivity_threshold).apply(sym);

  return hs_norm(fd + s * leading, 0.0);
}

}  // namespace sqgfront
