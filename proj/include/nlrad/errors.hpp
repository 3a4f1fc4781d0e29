#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlrad {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller passed arguments outside an operation's domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed or a solve hit a degenerate system.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An asserted property (ledger, corridor, invariant) did not hold.
class PropertyViolation : public Error {
 public:
  using Error::Error;
};

/// Raised when a diffusion coefficient fails positivity or boundedness.
class CoefficientError : public InvalidArgument {
 public:
  CoefficientError(const std::string& what, double witness)
      : InvalidArgument(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

/// Fixed-point or eigen iteration did not reach its tolerance.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate,
                   std::vector<double> residual_history)
      : NumericalError(what),
        last_iterate_(std::move(last_iterate)),
        residual_history_(std::move(residual_history)) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  const std::vector<double>& residual_history() const noexcept { return residual_history_; }

 private:
  std::vector<double> last_iterate_;
  std::vector<double> residual_history_;
};

}  // namespace nlrad
