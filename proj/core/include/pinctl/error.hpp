#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pinctl {

enum class ErrorCode {
  Parse,              // malformed document
  IndexOutOfRange,    // node label outside [base, base + n)
  NonPositiveWeight,
  DuplicateEdge,
  SelfLoop,
  Disconnected,       // operation requires a connected graph
  EmptySet,           // pinning / source set must be nonempty
  FullSet,            // every node pinned; closed-form bound inapplicable
  InvalidArgument,
  NotSymmetric,
  NonFinite,
  DimensionMismatch,
  NotPositiveDefinite,
  NotPositiveSemidefinite,
  Infeasible,
  BudgetExceeded,
  StepTooLarge,
  ShortTrace,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pinctl
