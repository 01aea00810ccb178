#pragma once

#include <stdexcept>
#include <string>

namespace runoff {

// Raised for malformed inputs and violated preconditions.
class Error : public std::invalid_argument {
 public:
  explicit Error(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an exhaustive search would exceed its configured budget.
// Never converted into a yes/no answer.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace runoff
