#pragma once

#include <stdexcept>
#include <string>

namespace logdamp {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain where a function is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Bracketed root finder could not find a sign change.
class RootNotBracketed : public Error {
 public:
  using Error::Error;
};

/// The integral does not converge (or the norm is infinite).
class Divergent : public Error {
 public:
  using Error::Error;
};

/// Base for quadrature failures surfaced by norm and energy evaluation.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class ToleranceNotMet : public QuadratureFailure {
 public:
  using QuadratureFailure::QuadratureFailure;
};

class NonFiniteIntegrand : public QuadratureFailure {
 public:
  using QuadratureFailure::QuadratureFailure;
};

/// Regression input cannot support the requested law.
class DegenerateFit : public Error {
 public:
  using Error::Error;
};

/// (n, theta) outside the hypotheses of the rate being checked.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace logdamp
