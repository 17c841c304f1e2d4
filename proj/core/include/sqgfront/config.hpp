#pragma once

// Run configuration: flat "key = value" lines grouped under [solver], [initial],
// [monitor], [output] and [experiment]. '#' and ';' start comments.

#include <istream>
#include <string>
#include <vector>

#include "sqgfront/errors.hpp"
#include "sqgfront/evolution.hpp"
#include "sqgfront/initial_data.hpp"

namespace sqgfront {

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line) : Error(what), line_(line) {}
  /// 1-based line of the offending entry, 0 when not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct ExperimentConfig {
  /// Spatial resolutions of the convergence study.
  std::vector<int> n_list{8, 12, 16};
  /// Time steps of the convergence study.
  std::vector<double> dt_list{0.02, 0.01, 0.005};
  /// Comparison index of the stability experiment (inhomogeneous H^r).
  double r = 2.0;
  std::vector<double> perturbations{1e-4, 1e-5};
  /// The stability perturbation is size * cos(perturbation_mode x).
  int perturbation_mode = 3;
  /// Bona-Smith: smoothing exponent and reference resolution.
  double delta = 0.1;
  int n_ref = 8192;
  std::vector<int> bona_smith_n{16, 32, 64, 128};
  /// Identity battery.
  std::vector<int> k_list{16, 32, 64, 128};
  std::vector<double> eps_list{0.1};
  double identity_s = 4.0;
  double identity_amp = 1.0;
};

struct RunConfig {
  SolverConfig solver;
  InitialSpec initial;
  std::string output;
  ExperimentConfig experiment;
};

/// Parses and validates; throws ConfigError (with line number) or DomainError.
/// Relative coefficient-file paths are resolved against base_dir.
RunConfig parse_config(std::istream& in, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

}  // namespace sqgfront
