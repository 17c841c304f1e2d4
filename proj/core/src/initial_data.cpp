#include "sqgfront/initial_data.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "sqgfront/errors.hpp"

namespace sqgfront {

PeriodicField single_mode(const SpectralSpace& space, int k, double amp) {
  return multi_mode(space, {{k, amp}});
}

PeriodicField multi_mode(const SpectralSpace& space, const std::vector<std::pair<int, double>>& modes) {
  PeriodicField out(space);
  for (const auto& [k, amp] : modes) {
    if (k < 1 || k > space.max_mode()) throw DomainError("multi_mode: mode outside 1..N");
    out.set_real_mode(k, out[k] + 0.5 * amp);
  }
  return out;
}

PeriodicField power_law(const SpectralSpace& space, double s, std::uint64_t seed, double amp) {
  std::mt19937_64 rng(seed);
  PeriodicField out(space);
  for (int xi = 1; xi <= space.max_mode(); ++xi) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out.set_real_mode(xi, std::polar(amp * std::pow(static_cast<double>(xi), -s - 0.51), theta));
  }
  return out;
}

PeriodicField exp_cos(const SpectralSpace& space, double amp) {
  PeriodicField out(space);
  for (int xi = 1; xi <= space.max_mode(); ++xi)
    out.set_real_mode(xi, amp * std::cyl_bessel_i(static_cast<double>(xi), 1.0));
  return out;
}

PeriodicField geometric_spectrum(const SpectralSpace& space, double rho, double amp) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("geometric_spectrum: rho must lie in (0, 1)");
  PeriodicField out(space);
  double r = 1.0;
  for (int xi = 1; xi <= space.max_mode(); ++xi) {
    r *= rho;
    out.set_real_mode(xi, 0.5 * amp * r);
  }
  return out;
}

PeriodicField read_coefficients(const std::string& path, const SpectralSpace& space) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open coefficient file " + path);
  PeriodicField out(space);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    int xi = 0;
    double re = 0.0, im = 0.0;
    std::string rest;
    if (!(ls >> xi >> re >> im) || (ls >> rest)) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": expected \"xi re im\"";
      throw Error(msg.str());
    }
    if (xi < 1 || xi > space.max_mode()) {
      std::ostringstream msg;
      msg << path << ":" << lineno << ": mode " << xi << " outside 1.." << space.max_mode();
      throw Error(msg.str());
    }
    out.set_real_mode(xi, Complex(re, im));
  }
  return out;
}

PeriodicField make_initial(const InitialSpec& spec, const SpectralSpace& space) {
  const std::string& g = spec.generator;
  if (g == "zero") return PeriodicField(space);
  if (g == "single_mode") return single_mode(space, spec.k, spec.amp);
  if (g == "multi_mode") return multi_mode(space, spec.modes);
  if (g == "power_law") return power_law(space, spec.s, spec.seed, spec.amp);
  if (g == "exp_cos") return exp_cos(space, spec.amp);
  if (g == "geometric") return geometric_spectrum(space, spec.rho, spec.amp);
  if (g == "file") return read_coefficients(spec.path, space);
  throw DomainError("unknown initial data generator '" + g + "'");
}

}  // namespace sqgfront
