#pragma once

// Fourier representation of real periodic functions on the torus R/2piZ.
//
// Conventions: f(x) = sum_xi c(xi) e^{i xi x}, c(xi) = (1/2pi) int f e^{-i xi x} dx.
// A field keeps the modes |xi| <= N; physical samples live on the M-point grid
// x_j = 2 pi j / M with M >= 4N + 2, so products of up to three fields can be
// formed on the grid and projected back without aliasing.

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace sqgfront {

using Complex = std::complex<double>;

class SpectralSpace {
 public:
  /// Space with the default grid size M = 4(N + 1).
  explicit SpectralSpace(int max_mode);
  SpectralSpace(int max_mode, int grid_size);

  int max_mode() const noexcept { return n_; }
  int grid_size() const noexcept { return m_; }
  /// Number of stored coefficients, 2N + 1.
  int size() const noexcept { return 2 * n_ + 1; }
  double node(int j) const;

  bool operator==(const SpectralSpace&) const = default;

 private:
  int n_;
  int m_;
};

/// Truncated Fourier series c(xi), |xi| <= N.
///
/// Fields produced from real data by the real-valued operations in this library
/// are Hermitian symmetric bit for bit. Complex-valued fields (e.g. D u = -i u_x)
/// are allowed as intermediates.
class PeriodicField {
 public:
  explicit PeriodicField(SpectralSpace space);
  PeriodicField(SpectralSpace space, std::vector<Complex> coeffs);

  /// Builds a real field from the non-negative modes; c(-xi) = conj(c(xi)).
  static PeriodicField from_positive_modes(SpectralSpace space,
                                           std::span<const Complex> modes,
                                           Complex mean = 0.0);

  const SpectralSpace& space() const noexcept { return space_; }
  int max_mode() const noexcept { return space_.max_mode(); }

  /// Coefficient at mode xi; zero outside |xi| <= N.
  Complex operator[](int xi) const noexcept {
    const int n = space_.max_mode();
    return (xi < -n || xi > n) ? Complex{} : coeffs_[static_cast<std::size_t>(xi + n)];
  }
  Complex& at(int xi);
  void set_mode(int xi, Complex value);
  /// Sets c(xi) and c(-xi) = conj(value).
  void set_real_mode(int xi, Complex value);

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  std::span<Complex> coefficients() noexcept { return coeffs_; }

  bool zero_mean() const noexcept { return (*this)[0] == Complex{}; }
  PeriodicField without_mean() const;

  /// max_xi |c(-xi) - conj(c(xi))|; exactly zero for real fields.
  double hermitian_defect() const noexcept;
  bool is_real() const noexcept { return hermitian_defect() == 0.0; }
  bool is_zero() const noexcept;
  bool all_finite() const noexcept;
  double max_abs_coefficient() const noexcept;

  PeriodicField& operator+=(const PeriodicField& other);
  PeriodicField& operator-=(const PeriodicField& other);
  PeriodicField& operator*=(double scale);
  PeriodicField& operator*=(Complex scale);

  friend PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
  friend PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
  friend PeriodicField operator-(PeriodicField a) { return a *= -1.0; }
  friend PeriodicField operator*(double s, PeriodicField a) { return a *= s; }
  friend PeriodicField operator*(PeriodicField a, double s) { return a *= s; }
  friend PeriodicField operator*(Complex s, PeriodicField a) { return a *= s; }

 private:
  void require_same_space(const PeriodicField& other) const;

  SpectralSpace space_;
  std::vector<Complex> coeffs_;
};

// ---------------------------------------------------------------------------
// Transforms

/// c(xi) = (1/M) sum_j samples_j e^{-i xi x_j}, |xi| <= N.
PeriodicField analyze(std::span<const double> samples, const SpectralSpace& space);
/// samples_j = Re sum_xi c(xi) e^{i xi x_j}.
std::vector<double> synthesize(const PeriodicField& field);
/// Complex grid values, for fields that are not Hermitian symmetric.
std::vector<Complex> synthesize_complex(const PeriodicField& field);
PeriodicField analyze_complex(std::span<const Complex> samples, const SpectralSpace& space);

// ---------------------------------------------------------------------------
// Multipliers

enum class SymbolKind { identity, log_abs, abs_pow, d, dx, inv_d_pow, b_alpha, composite };

/// A Fourier multiplier tabulated over xi in {-N..N}.
class Multiplier {
 public:
  static Multiplier identity(const SpectralSpace& space);
  /// L = log|d_x|; symbol log|xi|, 0 at xi = 0.
  static Multiplier log_abs(const SpectralSpace& space);
  /// |D|^s; symbol |xi|^s (0 at xi = 0 unless s == 0).
  static Multiplier abs_pow(const SpectralSpace& space, double s);
  /// D^k = (-i d_x)^k; symbol xi^k.
  static Multiplier d(const SpectralSpace& space, int power = 1);
  /// d_x^k; symbol (i xi)^k.
  static Multiplier dx(const SpectralSpace& space, int power = 1);
  /// D^{-k}; symbol xi^{-k}, 0 at xi = 0. Only defined on zero-mean fields.
  static Multiplier inv_d_pow(const SpectralSpace& space, int k);
  /// B_alpha = |d_x|^{1-alpha} (alpha != 1) or log|d_x| (alpha == 1), 0 < alpha <= 2.
  static Multiplier b_alpha(const SpectralSpace& space, double alpha);

  SymbolKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const SpectralSpace& space() const noexcept { return space_; }
  bool requires_zero_mean() const noexcept { return requires_zero_mean_; }

  Complex operator()(int xi) const noexcept {
    return table_[static_cast<std::size_t>(xi + space_.max_mode())];
  }
  std::span<const Complex> table() const noexcept { return table_; }

  /// Composition: (a * b)(xi) = a(xi) b(xi).
  friend Multiplier operator*(const Multiplier& a, const Multiplier& b);

 private:
  Multiplier(SymbolKind kind, std::string name, SpectralSpace space, bool zero_mean_only);

  SymbolKind kind_;
  std::string name_;
  SpectralSpace space_;
  bool requires_zero_mean_;
  std::vector<Complex> table_;
};

/// c_out(xi) = symbol(xi) c(xi). Throws PreconditionError for D^{-k} on a field with a mean.
PeriodicField apply(const Multiplier& symbol, const PeriodicField& u);

// ---------------------------------------------------------------------------
// Projections and embeddings

/// J_{N'}: zero every mode with |xi| > N'.
PeriodicField project(const PeriodicField& u, int max_mode);
/// Re-expresses u in a space with a different N; modes beyond the target are dropped.
PeriodicField change_space(const PeriodicField& u, const SpectralSpace& target);
/// x -> -x, i.e. c(xi) -> c(-xi).
PeriodicField reflect(const PeriodicField& u);

// ---------------------------------------------------------------------------
// Products (evaluated on the M-point grid; exact on the retained modes)

/// J_N(u v).
PeriodicField multiply(const PeriodicField& u, const PeriodicField& v);
/// J_N(u v w).
PeriodicField multiply(const PeriodicField& u, const PeriodicField& v, const PeriodicField& w);

// ---------------------------------------------------------------------------
// Norms

/// Homogeneous Sobolev norm (sum_{xi != 0} |xi|^{2s} |c(xi)|^2)^{1/2}.
double hs_norm(const PeriodicField& u, double s);
/// Inhomogeneous norm (sum_xi (1 + xi^2)^r |c(xi)|^2)^{1/2}.
double h_norm(const PeriodicField& u, double r);
/// Grid maximum of |u|.
double sup_norm(const PeriodicField& u);
/// sum_{k=0}^{sigma} max_j |d_x^k u(x_j)|, evaluated on the M-point grid.
double wsigma_inf_norm(const PeriodicField& u, int sigma);
/// int u conj(v) dx = 2 pi sum_xi c_u(xi) conj(c_v(xi)).
Complex inner_product(const PeriodicField& u, const PeriodicField& v);

}  // namespace sqgfront
