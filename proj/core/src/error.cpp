#include "qfloquet/error.hpp"

namespace qfloquet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PairingFailure: return "PairingFailure";
    case ErrorCode::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorCode::RecoveryFailure: return "RecoveryFailure";
    case ErrorCode::OmegaViolation: return "OmegaViolation";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::LogFailure: return "LogFailure";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::PeriodicityViolation: return "PeriodicityViolation";
    case ErrorCode::ZeroMultiplier: return "ZeroMultiplier";
    case ErrorCode::NotRealCoefficient: return "NotRealCoefficient";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidArgument:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::DomainError:
    case ErrorCode::NotPeriodic:
    case ErrorCode::NotRealCoefficient:
      return true;
    default:
      return false;
  }
}

}  // namespace qfloquet
