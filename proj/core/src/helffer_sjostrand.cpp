// Helffer-Sjostrand realization of (2 - T_{phi_x}^2)^p, used as an oracle for
// the eigendecomposition route. Nothing here touches an eigensolver: the
// operator is reduced to real tridiagonal form once and every resolvent
// (z - A)^{-1} is a tridiagonal solve.

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqgfront/calculus.hpp"
#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

// Truncated Taylor series f(x0 + h) = sum_k c[k] h^k, k <= 3.
struct Jet {
  std::array<double, 4> c{};

  static Jet constant(double v) { return Jet{{v, 0.0, 0.0, 0.0}}; }
  static Jet variable(double x0) { return Jet{{x0, 1.0, 0.0, 0.0}}; }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
  }
  friend Jet operator*(double s, Jet a) {
    for (double& x : a.c) x *= s;
    return a;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet q;
    for (int k = 0; k < 4; ++k) {
      double acc = a.c[k];
      for (int j = 1; j <= k; ++j) acc -= b.c[j] * q.c[k - j];
      q.c[k] = acc / b.c[0];
    }
    return q;
  }
  friend Jet exp(const Jet& a) {
    Jet e;
    e.c[0] = std::exp(a.c[0]);
    for (int k = 1; k < 4; ++k) {
      double acc = 0.0;
      for (int j = 1; j <= k; ++j) acc += j * a.c[j] * e.c[k - j];
      e.c[k] = acc / k;
    }
    return e;
  }
  friend Jet log(const Jet& a) {
    Jet l;
    l.c[0] = std::log(a.c[0]);
    for (int k = 1; k < 4; ++k) {
      double acc = a.c[k];
      for (int j = 1; j < k; ++j) acc -= (static_cast<double>(j) / k) * l.c[j] * a.c[k - j];
      l.c[k] = acc / a.c[0];
    }
    return l;
  }

  // k-th derivative.
  double derivative(int k) const {
    static constexpr double kFactorial[] = {1.0, 1.0, 2.0, 6.0};
    return kFactorial[k] * c[static_cast<std::size_t>(k)];
  }
};

// exp(-1/t) for t > 0.
Jet flat(const Jet& t) {
  if (t.c[0] <= 0.0) return Jet{};
  return exp(Jet::constant(-1.0) / t);
}

// Smooth step: 0 for t <= 0, 1 for t >= 1.
Jet smooth_step(const Jet& t) {
  if (t.c[0] <= 0.0) return Jet{};
  if (t.c[0] >= 1.0) return Jet::constant(1.0);
  const Jet a = flat(t);
  const Jet b = flat(Jet::constant(1.0) + (-1.0) * t);
  return a / (a + b);
}

struct Tridiagonal {
  Eigen::MatrixXcd q;
  Eigen::VectorXd diag;
  Eigen::VectorXd sub;
};

// Solves (z - T) y = b for real symmetric tridiagonal T (Thomas algorithm).
void resolvent_solve(const Tridiagonal& tri, Complex z, const Eigen::VectorXcd& b, Eigen::VectorXcd& y,
                     Eigen::VectorXcd& work) {
  const Eigen::Index n = b.size();
  Complex pivot = z - tri.diag(0);
  const double tiny = 1e-300;
  if (std::abs(pivot) < tiny) goto fail;
  y(0) = b(0) / pivot;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double e = tri.sub(i - 1);
    work(i) = -e / pivot;
    pivot = (z - tri.diag(i)) + e * work(i);
    if (std::abs(pivot) < tiny) goto fail;
    y(i) = (b(i) + e * y(i - 1)) / pivot;
  }
  for (Eigen::Index i = n - 2; i >= 0; --i) y(i) -= work(i + 1) * y(i + 1);
  return;
fail:
  std::ostringstream msg;
  msg << "hs_apply: resolvent solve broke down at z = " << z.real() << " + " << z.imag() << "i";
  throw NumericError(msg.str());
}

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> x, w;
  explicit GaussLegendre(int n) : x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int k = 1; k <= n; ++k) {
          const double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
        }
        dp = n * (z * p0 - p1) / (z * z - 1.0);
        const double dz = p0 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[static_cast<std::size_t>(i)] = z;
      w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

}  // namespace

// ---------------------------------------------------------------------------

AlmostAnalyticExtension::AlmostAnalyticExtension(double power, double lower, const HSQuadrature& quad)
    : power_(power), lo_(lower), upper_margin_(quad.upper_margin), radius_(quad.cutoff_radius) {
  if (!(lower > 0.0 && lower <= 2.0)) throw DomainError("AlmostAnalyticExtension: lower edge must lie in (0, 2]");
  if (!(upper_margin_ > 0.0) || !(radius_ > 0.0)) throw DomainError("AlmostAnalyticExtension: bad quadrature cutoffs");
}

std::array<double, 4> AlmostAnalyticExtension::jet(double alpha) const {
  if (alpha <= support_begin() || alpha >= support_end()) return {0.0, 0.0, 0.0, 0.0};
  const Jet x = Jet::variable(alpha);
  const Jet rise = smooth_step((1.0 / (lo_ / 2.0)) * (x + Jet::constant(-lo_ / 2.0)));
  const Jet fall = smooth_step((-1.0 / upper_margin_) * (x + Jet::constant(-(2.0 + upper_margin_))));
  const Jet f = exp(power_ * log(x)) * rise * fall;
  return {f.derivative(0), f.derivative(1), f.derivative(2), f.derivative(3)};
}

Complex AlmostAnalyticExtension::dbar(double alpha, double beta) const {
  const auto f = jet(alpha);
  const double half = radius_ / 2.0;
  const Jet chi0 = smooth_step((-1.0 / half) * (Jet::variable(std::abs(beta)) + Jet::constant(-radius_)));
  const double c0 = chi0.derivative(0);
  const double c0p = (beta < 0.0 ? -1.0 : 1.0) * chi0.derivative(1);
  const Complex ftilde0(f[0] - 0.5 * beta * beta * f[2], beta * f[1]);
  return 0.5 * (Complex(-0.5 * beta * beta * f[3] * c0, 0.0) + Complex(0.0, 1.0) * ftilde0 * c0p);
}

double dbar_ratio(double power, double lower, double beta, const HSQuadrature& quad) {
  const AlmostAnalyticExtension ext(power, lower, quad);
  double best = 0.0;
  const int samples = 4000;
  const double a0 = ext.support_begin(), a1 = ext.support_end();
  for (int i = 0; i <= samples; ++i) {
    const double alpha = a0 + (a1 - a0) * i / samples;
    best = std::max(best, std::abs(ext.dbar(alpha, beta)) / (beta * beta));
  }
  return best;
}

// ---------------------------------------------------------------------------

PeriodicField hs_apply(const PeriodicField& phi, double power, const PeriodicField& v,
                       const WeylParaproduct& para, const HSQuadrature& quad,
                       double positivity_threshold) {
  if (!(phi.space() == v.space())) throw DimensionError("hs_apply: space mismatch");
  const int n = phi.max_mode();
  const Eigen::Index dim = 2 * n + 1;

  // Nonzero modes first, the decoupled mean last.
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  a.topLeftCorner(2 * n, 2 * n) = weight_base_matrix(phi, para);
  a(dim - 1, dim - 1) = 2.0;

  // Gershgorin lower bound of the spectrum; chi1 = 1 from there up to 2.
  double lower = 2.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double radius = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
    lower = std::min(lower, a(i, i).real() - radius);
  }
  if (!(lower > positivity_threshold))
    throw NotPositiveDefinite("hs_apply: Gershgorin bound does not certify positivity", lower);

  Eigen::Tridiagonalization<Eigen::MatrixXcd> reduction(a);
  Tridiagonal tri{reduction.matrixQ(), reduction.diagonal(), reduction.subDiagonal()};

  Eigen::VectorXcd x(dim);
  x.head(2 * n) = to_mode_vector(v);
  x(dim - 1) = v[0];
  const Eigen::VectorXcd b = tri.q.adjoint() * x;

  const AlmostAnalyticExtension ext(power, lower, quad);
  const GaussLegendre gl(8);
  const double a0 = ext.support_begin(), a1 = ext.support_end();

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd y(dim), work(dim);
  std::vector<double> alpha_nodes, alpha_weights;
  std::vector<std::array<double, 4>> jets;

  for (double b_lo = quad.regularization, b_hi = 0.0; b_lo < quad.cutoff_radius; b_lo = b_hi) {
    b_hi = std::min(b_lo + std::min(b_lo, quad.max_beta_panel), quad.cutoff_radius);

    // alpha grid for this beta panel; panel width tracks beta so the resolvent peak is resolved.
    const double width = std::min(quad.max_alpha_panel, quad.beta_resolution * b_lo);
    const int panels = static_cast<int>(std::ceil((a1 - a0) / width));
    const double h = (a1 - a0) / panels;
    alpha_nodes.clear();
    alpha_weights.clear();
    jets.clear();
    for (int p = 0; p < panels; ++p) {
      const double mid = a0 + (p + 0.5) * h;
      for (std::size_t k = 0; k < gl.x.size(); ++k) {
        const double alpha = mid + 0.5 * h * gl.x[k];
        alpha_nodes.push_back(alpha);
        alpha_weights.push_back(0.5 * h * gl.w[k]);
        jets.push_back(ext.jet(alpha));
      }
    }

    for (std::size_t kb = 0; kb < gl.x.size(); ++kb) {
      const double beta_abs = 0.5 * (b_lo + b_hi) + 0.5 * (b_hi - b_lo) * gl.x[kb];
      const double wb = 0.5 * (b_hi - b_lo) * gl.w[kb];
      for (double sign : {1.0, -1.0}) {
        const double beta = sign * beta_abs;
        const double half = quad.cutoff_radius / 2.0;
        const Jet chi0 =
            smooth_step((-1.0 / half) * (Jet::variable(beta_abs) + Jet::constant(-quad.cutoff_radius)));
        const double c0 = chi0.derivative(0);
        const double c0p = sign * chi0.derivative(1);
        for (std::size_t ka = 0; ka < alpha_nodes.size(); ++ka) {
          const auto& f = jets[ka];
          if (f[0] == 0.0 && f[1] == 0.0 && f[2] == 0.0 && f[3] == 0.0) continue;
          const Complex ftilde0(f[0] - 0.5 * beta * beta * f[2], beta * f[1]);
          const Complex dbar =
              0.5 * (Complex(-0.5 * beta * beta * f[3] * c0, 0.0) + Complex(0.0, 1.0) * ftilde0 * c0p);
          resolvent_solve(tri, Complex(alpha_nodes[ka], beta), b, y, work);
          acc += (wb * alpha_weights[ka]) * dbar * y;
        }
      }
    }
  }

  const Eigen::VectorXcd result = (-1.0 / std::numbers::pi) * (tri.q * acc);
  return from_mode_vector(phi.space(), result.head(2 * n), result(dim - 1));
}

}  // namespace sqgfront
