#pragma once

#include <stdexcept>
#include <string>

namespace fgwp {

/// Malformed textual input (words, SLP files, tower files, automorphism files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates a structural requirement (a tower whose
/// centralizer generator is a proper power, an SLP image that is missing...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A requested expansion would exceed the configured letter cap.
class ExpansionOverflow : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace fgwp
