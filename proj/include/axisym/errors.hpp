#pragma once

#include <stdexcept>
#include <string>

namespace axisym {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing configuration: unknown keys, out-of-range values, missing
/// boundary descriptors.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A field contains NaN or Inf where finite values are required.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// An operator was applied to a field whose ghost layer is stale.
class GhostError : public Error {
 public:
  using Error::Error;
};

/// Elliptic solve did not reach the requested tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what + " (relative residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// NaN/overflow detected during time stepping.
class BlowupError : public Error {
 public:
  BlowupError(double t, std::string field)
      : Error("blow-up detected in " + field + " at t = " + std::to_string(t)),
        t_(t),
        field_(std::move(field)) {}
  double time() const { return t_; }
  const std::string& field() const { return field_; }

 private:
  double t_;
  std::string field_;
};

/// Malformed snapshot or timeseries file.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Internal contract violation (stale derived cache and the like).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace axisym
