#pragma once

#include <stdexcept>
#include <string>

namespace lcp {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Operation undefined for the supplied model kind (e.g. a permittivity
/// request on a perfect reflector, or the polarizability integral of a
/// purely static atom).
class ModelError : public Error {
public:
  using Error::Error;
};

/// Invalid or inconsistent input data (tables, profiles).
class DataError : public Error {
public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public DataError {
public:
  ParseError(const std::string& what, int line)
      : DataError(what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

/// Quadrature failed to reach the requested tolerance. Carries the best
/// available estimate and its error bound.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_bound)
      : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}
  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

private:
  double best_estimate_;
  double error_bound_;
};

/// The Casimir-Polder curvature cancels the trap confinement.
class InstabilityError : public Error {
public:
  using Error::Error;
};

} // namespace lcp
