#pragma once

#include <stdexcept>
#include <string>

namespace secluded {

// Malformed or out-of-contract input (bad file, vertex out of range, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural invariant does not hold (e.g. a partition that is not a twin
// partition). Raised for inputs that parse but are semantically invalid.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration or parameter budget exhausted.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Internal consistency failure; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace secluded
