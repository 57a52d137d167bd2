#pragma once

#include <stdexcept>
#include <string>

namespace maxsupp {

/// Bad caller input: out-of-range parameters, non-finite data, malformed sets.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An invariant the algorithms guarantee in exact arithmetic did not hold.
/// Seeing one means the floating-point input is numerically broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A solver ran out of its rescaling / halving budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  /// Short machine tag, e.g. "infeasible-or-ill-conditioned".
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ScalingOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class UnsupportedScale : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace maxsupp
