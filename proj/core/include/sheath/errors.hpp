#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sheath {

enum class ErrorCode {
  InvalidParams,
  DomainError,
  BranchExceeded,
  ConvergenceFailure,
  ExistenceViolation,
  QuadratureSingularity,
  InsufficientTail,
  InsufficientResolution,
  NewtonDivergence,
  CharacteristicSignViolation,
  PositivityLoss,
  CFLViolation,
  DegenerateFit,
  ConfigError,
  DependencyMissing,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace sheath
