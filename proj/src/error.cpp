#include "noether/error.hpp"

namespace noether {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ProjectivePole: return "ProjectivePole";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::DegenerateInvariants: return "DegenerateInvariants";
    case ErrorCode::SupportViolation: return "SupportViolation";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateConstants: return "DegenerateConstants";
    case ErrorCode::ZeroV2: return "ZeroV2";
    case ErrorCode::ZeroV45: return "ZeroV45";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::string compose_message(ErrorCode code, const std::string& message, std::optional<long> site) {
  std::string out(to_string(code));
  if (site) out += " at site " + std::to_string(*site);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::optional<long> site)
    : std::runtime_error(compose_message(code, message, site)), code_(code), site_(site) {}

}  // namespace noether
