#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace noether {

enum class ErrorCode {
  SingularMatrix,
  BranchPoint,
  KindMismatch,
  ProjectivePole,
  DegenerateWindow,
  NegativeRadicand,
  DegenerateInvariants,
  SupportViolation,
  WindowOutOfRange,
  DimensionMismatch,
  DegenerateConstants,
  ZeroV2,
  ZeroV45,
  ZeroDenominator,
  NewtonDivergence,
  SingularJacobian,
  NonConvergence,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library surfaces as this exception. `site()` carries
/// the lattice index when the failure is local to one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<long> site = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<long> site() const noexcept { return site_; }

 private:
  ErrorCode code_;
  std::optional<long> site_;
};

}  // namespace noether
