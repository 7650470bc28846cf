#include "sheath/errors.hpp"

namespace sheath {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BranchExceeded: return "BranchExceeded";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ExistenceViolation: return "ExistenceViolation";
    case ErrorCode::QuadratureSingularity: return "QuadratureSingularity";
    case ErrorCode::InsufficientTail: return "InsufficientTail";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::CharacteristicSignViolation: return "CharacteristicSignViolation";
    case ErrorCode::PositivityLoss: return "PositivityLoss";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::DependencyMissing: return "DependencyMissing";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace sheath
