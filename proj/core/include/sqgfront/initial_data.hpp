#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqgfront/spectral.hpp"

namespace sqgfront {

/// amp cos(k x).
PeriodicField single_mode(const SpectralSpace& space, int k, double amp);

/// sum_j amp_j cos(k_j x).
PeriodicField multi_mode(const SpectralSpace& space, const std::vector<std::pair<int, double>>& modes);

/// c(xi) = amp |xi|^{-s-0.51} e^{i theta_xi}, xi = 1..N, with phases drawn from mt19937_64(seed)
/// in order of xi: theta = 2 pi (raw >> 11) 2^{-53}. The same seed gives the same leading modes
/// on every space.
PeriodicField power_law(const SpectralSpace& space, double s, std::uint64_t seed, double amp = 1.0);

/// amp (e^{cos x} - mean); c(xi) = amp I_xi(1).
PeriodicField exp_cos(const SpectralSpace& space, double amp);

/// amp sum_{xi >= 1} rho^xi cos(xi x).
PeriodicField geometric_spectrum(const SpectralSpace& space, double rho, double amp);

/// Reads lines "xi re im" for 1 <= xi <= N; missing modes are zero. Blank lines and lines
/// starting with '#' are skipped. Throws Error with the line number on malformed input.
PeriodicField read_coefficients(const std::string& path, const SpectralSpace& space);

struct InitialSpec {
  /// zero | single_mode | multi_mode | power_law | exp_cos | geometric | file
  std::string generator = "zero";
  int k = 1;
  double amp = 1.0;
  std::vector<std::pair<int, double>> modes;
  double s = 4.0;
  std::uint64_t seed = 1;
  double rho = 0.5;
  std::string path;
};

PeriodicField make_initial(const InitialSpec& spec, const SpectralSpace& space);

}  // namespace sqgfront
