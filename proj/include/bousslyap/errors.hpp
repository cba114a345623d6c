#pragma once

#include <stdexcept>
#include <string>

namespace bousslyap {

/// Base of everything this library throws on purpose; what() carries the
/// full story (values, paths, step indices).
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad user input: config values, CLI flags, malformed files, bad call
/// arguments. Maps to CLI exit code 1.
struct ValidationError : Error {
  using Error::Error;
};

/// Filesystem failure; the message names the path. CLI exit code 1.
struct IoError : Error {
  using Error::Error;
};

/// Numerical failure of the method itself. CLI exit code 2.
struct NumericalError : Error {
  using Error::Error;
};

/// The fixed-point solve cannot contract: q = ||W - I/2|| + ||A - I/2|| >= 1.
/// Signals that the time step is too coarse relative to h^(2+s).
struct ContractionError : NumericalError {
  double q;
  explicit ContractionError(double q_, const std::string& msg)
      : NumericalError(msg), q(q_) {}
};

/// Fixed-point iteration exhausted max_iter without meeting tol.
struct NonConvergenceError : NumericalError {
  int iterations;
  double residual;
  NonConvergenceError(int it, double res, const std::string& msg)
      : NumericalError(msg), iterations(it), residual(res) {}
};

/// Pivoted elimination met a pivot below threshold.
struct SingularMatrixError : NumericalError {
  double min_pivot;
  explicit SingularMatrixError(double p, const std::string& msg)
      : NumericalError(msg), min_pivot(p) {}
};

/// A time step produced a non-finite value; names the offending step.
struct BlowUpError : NumericalError {
  int step;
  explicit BlowUpError(int step_, const std::string& msg)
      : NumericalError(msg), step(step_) {}
};

}  // namespace bousslyap
