#include "nppe/error.hpp"

namespace nppe {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TooManyRequested: return "TooManyRequested";
    case ErrorCode::KTooLarge: return "KTooLarge";
    case ErrorCode::LiftTooLarge: return "LiftTooLarge";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteData: return "NonFiniteData";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonSymmetric: return "NonSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DegenerateVariance: return "DegenerateVariance";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::TooManyRequested:
    case ErrorCode::KTooLarge:
    case ErrorCode::LiftTooLarge:
      return ErrorCategory::Usage;
    case ErrorCode::EmptyInput:
    case ErrorCode::NonFiniteData:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::GraphMismatch:
    case ErrorCode::ParseError:
    case ErrorCode::ShapeError:
    case ErrorCode::FormatError:
    case ErrorCode::IoError:
      return ErrorCategory::Data;
    case ErrorCode::NonSymmetric:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NoConvergence:
    case ErrorCode::SingularGram:
    case ErrorCode::DegenerateSpectrum:
    case ErrorCode::DegenerateVariance:
      return ErrorCategory::Numerical;
  }
  return ErrorCategory::Numerical;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

}  // namespace nppe
