#pragma once

#include <stdexcept>
#include <string>

namespace cg {

/// Malformed literal or command-line input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed input that violates an operation's precondition
/// (dimension mismatch, non-composable maps, unsupported ideal pair, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem-backed assertion failed. Always an implementation bug.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cg
