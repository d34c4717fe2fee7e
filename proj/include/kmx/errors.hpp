#pragma once

#include <stdexcept>
#include <string>

namespace kmx {

/// Bad input or a precondition that the caller can fix (wrong rank, non-root,
/// singular Gram matrix, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed fact contradicts a mathematical claim the library relies on
/// (facet bound exceeded, split search exhausted, sign search empty).
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace kmx
