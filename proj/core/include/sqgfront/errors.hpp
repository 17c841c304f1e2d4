#pragma once

#include <stdexcept>
#include <string>

namespace sqgfront {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched sizes or spectral spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain (negative mode count, alpha out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition on its input field does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Linear algebra failure (eigensolver, resolvent solve).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// 2 - T_{phi_x}^2 is not positive definite above the configured threshold.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, double margin)
      : Error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// The run left the continuation regime (positivity of 2 - T_{phi_x}^2 lost or norm not finite).
class ContinuationHalt : public Error {
 public:
  using Error::Error;
};

/// Non-finite coefficients appeared during time stepping.
class BlowUp : public Error {
 public:
  using Error::Error;
};

}  // namespace sqgfront
