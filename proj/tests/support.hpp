#pragma once

#include <cmath>
#include <map>
#include <random>

#include "sqgfront/paraproduct.hpp"
#include "sqgfront/spectral.hpp"

namespace sqgfront::test {

/// Real field with modes 1..bandwidth, |c(xi)| ~ amp / xi^decay.
inline PeriodicField random_field(const SpectralSpace& sp, std::uint64_t seed, double amp = 1.0,
                                  double decay = 0.0, int bandwidth = -1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  PeriodicField f(sp);
  const int band = bandwidth < 0 ? sp.max_mode() : bandwidth;
  for (int k = 1; k <= band; ++k)
    f.set_real_mode(k, Complex(nd(rng), nd(rng)) * (amp / std::pow(static_cast<double>(k), decay)));
  return f;
}

inline double max_diff(const PeriodicField& a, const PeriodicField& b) { return (a - b).max_abs_coefficient(); }

// Coefficient maps with unbounded support, for full-convolution oracles.
using Sparse = std::map<int, Complex>;

inline Sparse to_sparse(const PeriodicField& f) {
  Sparse out;
  for (int k = -f.max_mode(); k <= f.max_mode(); ++k)
    if (f[k] != Complex{}) out[k] = f[k];
  return out;
}

inline Sparse conv(const Sparse& a, const Sparse& b) {
  Sparse out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out[ka + kb] += ca * cb;
  return out;
}

template <class Symbol>
Sparse apply_symbol(const Sparse& a, Symbol sym) {
  Sparse out;
  for (const auto& [k, c] : a) out[k] = sym(k) * c;
  return out;
}

inline Sparse axpy(const Sparse& a, Complex s, const Sparse& b) {
  Sparse out = a;
  for (const auto& [k, c] : b) out[k] += s * c;
  return out;
}

inline PeriodicField to_field(const Sparse& a, const SpectralSpace& sp) {
  PeriodicField f(sp);
  for (const auto& [k, c] : a)
    if (std::abs(k) <= sp.max_mode()) f.at(k) = c;
  return f;
}

/// T_u v straight from the defining sum.
inline PeriodicField paraproduct_oracle(const CutoffChi& chi, const PeriodicField& u, const PeriodicField& v) {
  const int n = u.max_mode();
  PeriodicField out(u.space());
  for (int xi = -n; xi <= n; ++xi) {
    Complex acc{};
    for (int eta = -n; eta <= n; ++eta) {
      if (eta == 0 || xi + eta == 0 || std::abs(xi - eta) > n) continue;
      acc += chi(std::abs(xi - eta) / static_cast<double>(std::abs(xi + eta))) * u[xi - eta] * v[eta];
    }
    out.at(xi) = acc;
  }
  return out;
}

}  // namespace sqgfront::test
