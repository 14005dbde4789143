#pragma once

#include <stdexcept>
#include <string>

namespace fde {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the admissible parameter range.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A singular profile was sampled at its singular point (r = 0).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A piecewise profile was differentiated exactly at its gluing corner.
class CornerError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A barrier constant could not be selected within the iteration budget.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// Two radial fields that should be ordered are not.
class OrderingError : public Error {
 public:
  using Error::Error;
};

class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

class PositivityLoss : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class GapSignError : public FitError {
 public:
  using FitError::FitError;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fde
