#include "sqgfront/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include "sqgfront/errors.hpp"

namespace sqgfront {

namespace {

// FFTW plans are created once per (kind, M) and executed through the new-array
// interface, which is thread safe. Plan creation itself is serialized.
enum class PlanKind { r2c, c2r, c2c_forward, c2c_backward };

template <typename T>
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))), size(n) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;

  T* data;
  std::size_t size;
};

class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(PlanKind kind, int m) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(kind, m);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    FftwBuffer<double> real(static_cast<std::size_t>(m));
    FftwBuffer<fftw_complex> cplx(static_cast<std::size_t>(m));
    FftwBuffer<fftw_complex> cplx2(static_cast<std::size_t>(m));
    fftw_plan plan = nullptr;
    switch (kind) {
      case PlanKind::r2c:
        plan = fftw_plan_dft_r2c_1d(m, real.data, cplx.data, FFTW_ESTIMATE);
        break;
      case PlanKind::c2r:
        plan = fftw_plan_dft_c2r_1d(m, cplx.data, real.data, FFTW_ESTIMATE);
        break;
      case PlanKind::c2c_forward:
        plan = fftw_plan_dft_1d(m, cplx.data, cplx2.data, FFTW_FORWARD, FFTW_ESTIMATE);
        break;
      case PlanKind::c2c_backward:
        plan = fftw_plan_dft_1d(m, cplx.data, cplx2.data, FFTW_BACKWARD, FFTW_ESTIMATE);
        break;
    }
    if (plan == nullptr) throw NumericError("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<PlanKind, int>, fftw_plan> plans_;
};

Complex to_complex(const fftw_complex& c) { return {c[0], c[1]}; }

void require_same(const SpectralSpace& a, const SpectralSpace& b, const char* what) {
  if (!(a == b)) throw DimensionError(std::string(what) + ": fields live on different spectral spaces");
}

// Grid values of a real field. Non-Hermitian input is replaced by its real part.
std::vector<double> real_grid(const PeriodicField& field) {
  const int m = field.space().grid_size();
  const int n = field.max_mode();
  FftwBuffer<fftw_complex> half(static_cast<std::size_t>(m / 2 + 1));
  std::fill_n(&half.data[0][0], 2 * (m / 2 + 1), 0.0);
  const bool real = field.is_real();
  half.data[0][0] = field[0].real();
  for (int xi = 1; xi <= n; ++xi) {
    Complex c = real ? field[xi] : 0.5 * (field[xi] + std::conj(field[-xi]));
    half.data[xi][0] = c.real();
    half.data[xi][1] = c.imag();
  }
  FftwBuffer<double> out(static_cast<std::size_t>(m));
  fftw_execute_dft_c2r(PlanCache::instance().get(PlanKind::c2r, m), half.data, out.data);
  return std::vector<double>(out.data, out.data + m);
}

}  // namespace

// ---------------------------------------------------------------------------

SpectralSpace::SpectralSpace(int max_mode) : SpectralSpace(max_mode, 4 * (max_mode + 1)) {}

SpectralSpace::SpectralSpace(int max_mode, int grid_size) : n_(max_mode), m_(grid_size) {
  if (n_ < 1) throw DomainError("SpectralSpace: N must be >= 1");
  if (m_ < 4 * n_ + 2) throw DomainError("SpectralSpace: grid size must satisfy M >= 4N + 2");
}

double SpectralSpace::node(int j) const { return 2.0 * std::numbers::pi * j / m_; }

// ---------------------------------------------------------------------------

PeriodicField::PeriodicField(SpectralSpace space)
    : space_(space), coeffs_(static_cast<std::size_t>(space.size())) {}

PeriodicField::PeriodicField(SpectralSpace space, std::vector<Complex> coeffs)
    : space_(space), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != static_cast<std::size_t>(space_.size()))
    throw DimensionError("PeriodicField: expected 2N+1 coefficients");
}

PeriodicField PeriodicField::from_positive_modes(SpectralSpace space,
                                                 std::span<const Complex> modes, Complex mean) {
  PeriodicField f(space);
  f.at(0) = mean;
  const int count = std::min<int>(static_cast<int>(modes.size()), space.max_mode());
  for (int xi = 1; xi <= count; ++xi) f.set_real_mode(xi, modes[static_cast<std::size_t>(xi - 1)]);
  return f;
}

Complex& PeriodicField::at(int xi) {
  const int n = space_.max_mode();
  if (xi < -n || xi > n) throw DomainError("PeriodicField: mode outside |xi| <= N");
  return coeffs_[static_cast<std::size_t>(xi + n)];
}

void PeriodicField::set_mode(int xi, Complex value) { at(xi) = value; }

void PeriodicField::set_real_mode(int xi, Complex value) {
  if (xi == 0) {
    at(0) = value.real();
    return;
  }
  at(xi) = value;
  at(-xi) = std::conj(value);
}

PeriodicField PeriodicField::without_mean() const {
  PeriodicField f = *this;
  f.at(0) = 0.0;
  return f;
}

double PeriodicField::hermitian_defect() const noexcept {
  double defect = std::abs((*this)[0].imag());
  for (int xi = 1; xi <= max_mode(); ++xi)
    defect = std::max(defect, std::abs((*this)[-xi] - std::conj((*this)[xi])));
  return defect;
}

bool PeriodicField::is_zero() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

bool PeriodicField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

double PeriodicField::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

void PeriodicField::require_same_space(const PeriodicField& other) const {
  require_same(space_, other.space_, "PeriodicField arithmetic");
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
  require_same_space(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other) {
  require_same_space(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

PeriodicField& PeriodicField::operator*=(double scale) {
  for (Complex& c : coeffs_) c *= scale;
  return *this;
}

PeriodicField& PeriodicField::operator*=(Complex scale) {
  for (Complex& c : coeffs_) c *= scale;
  return *this;
}

// ---------------------------------------------------------------------------

PeriodicField analyze(std::span<const double> samples, const SpectralSpace& space) {
  const int m = space.grid_size();
  if (samples.size() != static_cast<std::size_t>(m))
    throw DimensionError("analyze: sample count does not match grid size M");
  FftwBuffer<double> in(static_cast<std::size_t>(m));
  std::copy(samples.begin(), samples.end(), in.data);
  FftwBuffer<fftw_complex> out(static_cast<std::size_t>(m / 2 + 1));
  fftw_execute_dft_r2c(PlanCache::instance().get(PlanKind::r2c, m), in.data, out.data);

  PeriodicField f(space);
  const double inv_m = 1.0 / m;
  f.at(0) = out.data[0][0] * inv_m;
  for (int xi = 1; xi <= space.max_mode(); ++xi) f.set_real_mode(xi, to_complex(out.data[xi]) * inv_m);
  return f;
}

std::vector<double> synthesize(const PeriodicField& field) { return real_grid(field); }

std::vector<Complex> synthesize_complex(const PeriodicField& field) {
  const int m = field.space().grid_size();
  const int n = field.max_mode();
  FftwBuffer<fftw_complex> in(static_cast<std::size_t>(m));
  std::fill_n(&in.data[0][0], 2 * m, 0.0);
  for (int xi = -n; xi <= n; ++xi) {
    const int k = xi >= 0 ? xi : xi + m;
    in.data[k][0] = field[xi].real();
    in.data[k][1] = field[xi].imag();
  }
  FftwBuffer<fftw_complex> out(static_cast<std::size_t>(m));
  fftw_execute_dft(PlanCache::instance().get(PlanKind::c2c_backward, m), in.data, out.data);
  std::vector<Complex> values(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) values[static_cast<std::size_t>(j)] = to_complex(out.data[j]);
  return values;
}

PeriodicField analyze_complex(std::span<const Complex> samples, const SpectralSpace& space) {
  const int m = space.grid_size();
  if (samples.size() != static_cast<std::size_t>(m))
    throw DimensionError("analyze_complex: sample count does not match grid size M");
  FftwBuffer<fftw_complex> in(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    in.data[j][0] = samples[static_cast<std::size_t>(j)].real();
    in.data[j][1] = samples[static_cast<std::size_t>(j)].imag();
  }
  FftwBuffer<fftw_complex> out(static_cast<std::size_t>(m));
  fftw_execute_dft(PlanCache::instance().get(PlanKind::c2c_forward, m), in.data, out.data);
  PeriodicField f(space);
  const double inv_m = 1.0 / m;
  for (int xi = -space.max_mode(); xi <= space.max_mode(); ++xi) {
    const int k = xi >= 0 ? xi : xi + m;
    f.at(xi) = to_complex(out.data[k]) * inv_m;
  }
  return f;
}

// ---------------------------------------------------------------------------

Multiplier::Multiplier(SymbolKind kind, std::string name, SpectralSpace space, bool zero_mean_only)
    : kind_(kind),
      name_(std::move(name)),
      space_(space),
      requires_zero_mean_(zero_mean_only),
      table_(static_cast<std::size_t>(space.size())) {}

Multiplier Multiplier::identity(const SpectralSpace& space) {
  Multiplier m(SymbolKind::identity, "identity", space, false);
  std::fill(m.table_.begin(), m.table_.end(), Complex{1.0});
  return m;
}

Multiplier Multiplier::log_abs(const SpectralSpace& space) {
  Multiplier m(SymbolKind::log_abs, "L", space, false);
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi)
    m.table_[static_cast<std::size_t>(xi + n)] = xi == 0 ? 0.0 : std::log(std::abs(xi));
  return m;
}

Multiplier Multiplier::abs_pow(const SpectralSpace& space, double s) {
  Multiplier m(SymbolKind::abs_pow, "|D|^" + std::to_string(s), space, s < 0.0);
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi) {
    double value;
    if (xi == 0)
      value = s == 0.0 ? 1.0 : 0.0;
    else
      value = std::pow(static_cast<double>(std::abs(xi)), s);
    m.table_[static_cast<std::size_t>(xi + n)] = value;
  }
  return m;
}

Multiplier Multiplier::d(const SpectralSpace& space, int power) {
  if (power < 0) return inv_d_pow(space, -power);
  Multiplier m(SymbolKind::d, "D^" + std::to_string(power), space, false);
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi) {
    double value = 1.0;
    for (int k = 0; k < power; ++k) value *= xi;
    m.table_[static_cast<std::size_t>(xi + n)] = value;
  }
  return m;
}

Multiplier Multiplier::dx(const SpectralSpace& space, int power) {
  if (power < 0) throw DomainError("Multiplier::dx: negative power");
  Multiplier m(SymbolKind::dx, "dx^" + std::to_string(power), space, false);
  static constexpr Complex kUnitPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = kUnitPowers[power % 4];
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi) {
    double value = 1.0;
    for (int k = 0; k < power; ++k) value *= xi;
    m.table_[static_cast<std::size_t>(xi + n)] = phase * value;
  }
  return m;
}

Multiplier Multiplier::inv_d_pow(const SpectralSpace& space, int k) {
  if (k < 0) throw DomainError("Multiplier::inv_d_pow: k must be >= 0");
  if (k == 0) return identity(space);
  Multiplier m(SymbolKind::inv_d_pow, "D^-" + std::to_string(k), space, true);
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi) {
    double value = 0.0;
    if (xi != 0) {
      double p = 1.0;
      for (int j = 0; j < k; ++j) p *= xi;
      value = 1.0 / p;
    }
    m.table_[static_cast<std::size_t>(xi + n)] = value;
  }
  return m;
}

Multiplier Multiplier::b_alpha(const SpectralSpace& space, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("b_alpha: alpha must lie in (0, 2]");
  if (alpha == 1.0) {
    Multiplier m = log_abs(space);
    m.kind_ = SymbolKind::b_alpha;
    m.name_ = "B_1";
    return m;
  }
  Multiplier m(SymbolKind::b_alpha, "B_" + std::to_string(alpha), space, false);
  const int n = space.max_mode();
  for (int xi = -n; xi <= n; ++xi)
    m.table_[static_cast<std::size_t>(xi + n)] =
        xi == 0 ? 0.0 : std::pow(static_cast<double>(std::abs(xi)), 1.0 - alpha);
  return m;
}

Multiplier operator*(const Multiplier& a, const Multiplier& b) {
  require_same(a.space_, b.space_, "Multiplier composition");
  Multiplier m(SymbolKind::composite, a.name_ + "*" + b.name_, a.space_,
               a.requires_zero_mean_ || b.requires_zero_mean_);
  for (std::size_t i = 0; i < m.table_.size(); ++i) m.table_[i] = a.table_[i] * b.table_[i];
  return m;
}

PeriodicField apply(const Multiplier& symbol, const PeriodicField& u) {
  require_same(symbol.space(), u.space(), "apply");
  if (symbol.requires_zero_mean() && !u.zero_mean())
    throw PreconditionError("apply: " + symbol.name() + " requires a zero-mean field");
  PeriodicField out(u.space());
  auto src = u.coefficients();
  auto dst = out.coefficients();
  auto tab = symbol.table();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = tab[i] * src[i];
  return out;
}

// ---------------------------------------------------------------------------

PeriodicField project(const PeriodicField& u, int max_mode) {
  if (max_mode < 1) throw DomainError("project: N' must be >= 1");
  if (max_mode > u.max_mode()) throw DomainError("project: N' exceeds the field's N");
  PeriodicField out = u;
  for (int xi = max_mode + 1; xi <= u.max_mode(); ++xi) {
    out.at(xi) = 0.0;
    out.at(-xi) = 0.0;
  }
  return out;
}

PeriodicField change_space(const PeriodicField& u, const SpectralSpace& target) {
  PeriodicField out(target);
  const int n = std::min(u.max_mode(), target.max_mode());
  for (int xi = -n; xi <= n; ++xi) out.at(xi) = u[xi];
  return out;
}

PeriodicField reflect(const PeriodicField& u) {
  PeriodicField out(u.space());
  for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) out.at(xi) = u[-xi];
  return out;
}

// ---------------------------------------------------------------------------

PeriodicField multiply(const PeriodicField& u, const PeriodicField& v) {
  require_same(u.space(), v.space(), "multiply");
  if (u.is_real() && v.is_real()) {
    auto a = real_grid(u);
    const auto b = real_grid(v);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
    return analyze(a, u.space());
  }
  auto a = synthesize_complex(u);
  const auto b = synthesize_complex(v);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j];
  return analyze_complex(a, u.space());
}

PeriodicField multiply(const PeriodicField& u, const PeriodicField& v, const PeriodicField& w) {
  require_same(u.space(), v.space(), "multiply");
  require_same(u.space(), w.space(), "multiply");
  if (u.is_real() && v.is_real() && w.is_real()) {
    auto a = real_grid(u);
    const auto b = real_grid(v);
    const auto c = real_grid(w);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j] * c[j];
    return analyze(a, u.space());
  }
  auto a = synthesize_complex(u);
  const auto b = synthesize_complex(v);
  const auto c = synthesize_complex(w);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= b[j] * c[j];
  return analyze_complex(a, u.space());
}

// ---------------------------------------------------------------------------

double hs_norm(const PeriodicField& u, double s) {
  double sum = 0.0;
  for (int xi = 1; xi <= u.max_mode(); ++xi) {
    const double w = std::pow(static_cast<double>(xi), 2.0 * s);
    sum += w * (std::norm(u[xi]) + std::norm(u[-xi]));
  }
  return std::sqrt(sum);
}

double h_norm(const PeriodicField& u, double r) {
  double sum = std::norm(u[0]);
  for (int xi = 1; xi <= u.max_mode(); ++xi) {
    const double w = std::pow(1.0 + static_cast<double>(xi) * xi, r);
    sum += w * (std::norm(u[xi]) + std::norm(u[-xi]));
  }
  return std::sqrt(sum);
}

double sup_norm(const PeriodicField& u) {
  double m = 0.0;
  if (u.is_real()) {
    for (double x : real_grid(u)) m = std::max(m, std::abs(x));
  } else {
    for (Complex x : synthesize_complex(u)) m = std::max(m, std::abs(x));
  }
  return m;
}

double wsigma_inf_norm(const PeriodicField& u, int sigma) {
  if (sigma < 0) throw DomainError("wsigma_inf_norm: sigma must be >= 0");
  double total = sup_norm(u);
  for (int k = 1; k <= sigma; ++k) total += sup_norm(apply(Multiplier::dx(u.space(), k), u));
  return total;
}

Complex inner_product(const PeriodicField& u, const PeriodicField& v) {
  require_same(u.space(), v.space(), "inner_product");
  Complex sum = 0.0;
  for (int xi = -u.max_mode(); xi <= u.max_mode(); ++xi) sum += u[xi] * std::conj(v[xi]);
  return 2.0 * std::numbers::pi * sum;
}

}  // namespace sqgfront
