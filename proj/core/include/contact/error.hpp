#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace contact {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is out of its admissible range (negative rate, n = 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The input violates a structural precondition (not a tree, degree bound, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Edge-list text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Exact computations refuse inputs beyond their state-space cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A query reaches past the materialized horizon of a Harris system.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// An algorithm failed to produce a witness that its construction guarantees.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace contact
