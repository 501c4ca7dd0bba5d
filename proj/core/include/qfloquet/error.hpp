#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qfloquet {

enum class ErrorCode {
  DivisionByZero,
  NonSquare,
  DimensionMismatch,
  InvalidArgument,
  PairingFailure,
  NotAnEigenvalue,
  RecoveryFailure,
  OmegaViolation,
  Singular,
  LogFailure,
  SyntaxError,
  UnknownIdentifier,
  DomainError,
  StepUnderflow,
  NotPeriodic,
  PeriodicityViolation,
  ZeroMultiplier,
  NotRealCoefficient,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by malformed input (expressions, shapes, periods)
/// rather than by a numerical breakdown.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> offset = std::nullopt)
      : std::runtime_error(what), code_(code), offset_(offset) {}

  ErrorCode code() const noexcept { return code_; }

  /// Byte offset into the source text for expression errors.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace qfloquet
