#pragma once

#include <stdexcept>
#include <string>

namespace pellfib {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root bracket without a sign change.
class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The current working precision cannot certify the requested quantity.
/// Caught by the escalation driver, which retries at a higher precision.
class PrecisionEscalation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Escalation reached the precision cap without certifying the result.
class PrecisionCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that must hold exactly did not (implementation bug or a
/// violated published inequality).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A claimed solution family failed its exact check.
class FamilyViolation : public ConsistencyError {
 public:
  using ConsistencyError::ConsistencyError;
};

}  // namespace pellfib
