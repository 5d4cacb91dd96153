#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twistlab {

/// Invalid input to an operation: non-roots, mixed root systems, bad index sets.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction that should always succeed did not.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration hit its size guard. Carries how far it got.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

}  // namespace twistlab
