#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace smdp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input vector does not match the width a circuit or model declares.
class WidthError : public Error {
 public:
  using Error::Error;
};

/// A circuit violates one of its structural invariants.
class CircuitError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. Carries the source name and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The model's probability semantics are broken (e.g. numerator above the denominator).
class ModelError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured state or trajectory limit.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// A policy circuit decoded an action index outside the action list.
class PolicyError : public Error {
 public:
  using Error::Error;
};

/// No action reproduces the value function at the queried state.
class InconsistentValueError : public Error {
 public:
  using Error::Error;
};

/// A reduction input violates the construction's preconditions.
class ReductionError : public Error {
 public:
  using Error::Error;
};

}  // namespace smdp
