#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

/// A randomised construction ran out of draws.
class RetryExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The configuration has no construction in this toolkit.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr int kRetryBudget = 32;

}  // namespace k3
