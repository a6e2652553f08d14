#pragma once

#include <stdexcept>
#include <string>

namespace smcquad {

/// Scenario or configuration value violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Input file is syntactically malformed or contains unknown keys.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Pitch angle entered the guard band around +/- pi/2 where the Euler
/// parameterization degenerates.
class AngleSingularityError : public std::runtime_error {
 public:
  explicit AngleSingularityError(const std::string& what) : std::runtime_error(what) {}
};

/// An integration stage produced NaN or infinity.
class NonFiniteStateError : public std::runtime_error {
 public:
  explicit NonFiniteStateError(const std::string& what) : std::runtime_error(what) {}
};

/// Observer gain selection was asked for a non-positive perturbation bound.
class NonPositiveBoundError : public ValidationError {
 public:
  explicit NonPositiveBoundError(const std::string& what) : ValidationError(what) {}
};

/// Summary window is empty (warm-up exceeds the log duration).
class EmptyWindowError : public ValidationError {
 public:
  explicit EmptyWindowError(const std::string& what) : ValidationError(what) {}
};

/// Requested figure id is not one of the known plot layouts.
class UnknownFigureError : public ValidationError {
 public:
  explicit UnknownFigureError(const std::string& what) : ValidationError(what) {}
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smcquad
