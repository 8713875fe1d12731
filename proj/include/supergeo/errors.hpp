#pragma once

#include <stdexcept>
#include <string>

namespace supergeo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible spaces (generator counts, chart signatures,
/// algebra dimensions).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An element or matrix whose reduced (body) part is singular.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of a coefficient function or chart.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A derivative was requested from a coefficient that cannot provide one.
class DerivativeUnavailable : public Error {
 public:
  using Error::Error;
};

/// Parameters rejected by a constructor or validator.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis of an algorithm does not hold for its input.
class HypothesisFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace supergeo
