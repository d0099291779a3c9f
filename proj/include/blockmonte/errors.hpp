#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace blockmonte {

/// Bad argument to an operation (precondition violated).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value failed validation. `field()` names the offending key.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string field, const std::string& message)
      : InvalidArgument(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The sample (or region) does not support an estimate, e.g. zero successes
/// where the estimator divides by the success count.
class DegenerateSample : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact integer result would not fit in 64 bits.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Requested enumeration is too large to run.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A function evaluated to a non-finite value at a sample point.
class DomainError : public std::domain_error {
 public:
  DomainError(std::int64_t column, const std::string& message)
      : std::domain_error(message), column_(column) {}

  std::int64_t column() const noexcept { return column_; }

 private:
  std::int64_t column_;
};

}  // namespace blockmonte
