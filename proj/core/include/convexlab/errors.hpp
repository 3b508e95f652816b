#pragma once

#include <stdexcept>
#include <string>

namespace cvx {

/// Input outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Request beyond a configured capability (order cap, index cap, ...).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A classical derivative of the requested order does not exist at the point.
struct NotDifferentiableError : std::runtime_error {
  NotDifferentiableError(const std::string& what, int limiting_order)
      : std::runtime_error(what), limiting_order(limiting_order) {}
  int limiting_order;
};

/// Subdivision budget exhausted; carries the best sound bound found so far.
struct BudgetExceededError : std::runtime_error {
  BudgetExceededError(const std::string& what, double best_bound)
      : std::runtime_error(what), best_bound(best_bound) {}
  double best_bound;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cvx
