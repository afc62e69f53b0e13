#pragma once

#include <stdexcept>
#include <string>

namespace transurf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation outside a validity interval, or a singular intermediate
// (log of non-positive, division by zero, NaN/Inf).
class DomainError : public Error {
 public:
  using Error::Error;
};

// First fundamental form (or lightlike normal) degenerate at the node.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Lorentzian causal-character constraint of a surface violated at the node.
class CausalityError : public Error {
 public:
  using Error::Error;
};

class AllDegenerateError : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        message_(what),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// Message without the position suffix.
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace transurf
