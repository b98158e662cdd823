#pragma once

#include <stdexcept>
#include <string>

namespace epi {

/// Caller supplied something outside an operation's domain (bad index,
/// malformed partition, exponent out of range, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical result violated an invariant that holds analytically.
/// Indicates a logic error or catastrophic roundoff, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace epi
