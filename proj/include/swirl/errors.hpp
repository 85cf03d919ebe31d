#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace swirl {

/// Base of every error raised by the library. `kind()` is a stable
/// snake_case tag used by the CLI for its JSON diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Argument outside the domain of a function (r outside [0,1], x < 0, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message) : Error("domain_error", message) {}
};

/// Operation undefined for the given mode number (typically n = 0).
class InvalidModeError : public Error {
 public:
  explicit InvalidModeError(const std::string& message) : Error("invalid_mode", message) {}
};

/// A numerical procedure did not reach its tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& message, double achieved)
      : Error("accuracy_error", message), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Field is not regular on the axis (infinite energy, undefined limit).
class RegularityError : public Error {
 public:
  explicit RegularityError(const std::string& message) : Error("regularity_error", message) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string& message) : Error("solver_error", message) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error("validation_error", message) {}
};

/// Gram determinant of (X, Y) vanishes.
class DegenerateSectionError : public Error {
 public:
  explicit DegenerateSectionError(const std::string& message)
      : Error("degenerate_section", message) {}
};

/// Input violates a theorem hypothesis (e.g. u*omega <= 0 for the spectrum).
class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& message)
      : Error("hypothesis_violation", message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error("parse_error", message + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace swirl
