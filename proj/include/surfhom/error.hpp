#pragma once

#include <stdexcept>
#include <string>

namespace surfhom {

/// Malformed input: bad gluing word, invalid rotation system, invalid walk.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a numeric formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Exact integer arithmetic left the int64 range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An internal invariant failed (e.g. a walk class outside the span of a basis).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace surfhom
