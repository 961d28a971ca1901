#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cellricci {

/// Malformed construction request (bad dims, duplicate ids, bad signs).
class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text-format diagnostic carrying the 1-based offending line.
class ParseError : public ComplexError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ComplexError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// The complex does not have the structure a computation relies on
/// (quasiconvexity, the counting identity, Lipschitz witnesses).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undefined measure, disconnected supports, infeasible coupling.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form identity checked at runtime did not hold.
class IdentityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// h(alpha) did not stabilize before the refinement cap.
class LimitNotStabilized : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cellricci
