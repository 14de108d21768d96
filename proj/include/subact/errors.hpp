#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subact {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched shapes: permutation degrees, field moduli, dimensions.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the range an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A claimed algebraic structure failed its exhaustive verification.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (scenario files, command-line values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap refused the computation.
class CapacityError : public Error {
 public:
  CapacityError(std::string cap, std::size_t limit, std::size_t measured,
                const std::string& hint = {})
      : Error("capacity cap '" + cap + "' exceeded: limit " + std::to_string(limit) +
              ", measured " + std::to_string(measured) + (hint.empty() ? "" : " (" + hint + ")")),
        cap_(std::move(cap)),
        limit_(limit),
        measured_(measured) {}

  const std::string& cap() const noexcept { return cap_; }
  std::size_t limit() const noexcept { return limit_; }
  std::size_t measured() const noexcept { return measured_; }

 private:
  std::string cap_;
  std::size_t limit_;
  std::size_t measured_;
};

}  // namespace subact
