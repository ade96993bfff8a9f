#pragma once

#include <stdexcept>
#include <string>

namespace dtsched {

// Input violates a structural precondition (divisibility, window bounds, ...).
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact oracle refused to run because its state space is too large.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested (update, query) pairing has no algebra behind it.
class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace dtsched
