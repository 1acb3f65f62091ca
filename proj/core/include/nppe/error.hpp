#pragma once

#include <stdexcept>
#include <string>

namespace nppe {

enum class ErrorCode {
  InvalidArgument,
  TooManyRequested,
  KTooLarge,
  LiftTooLarge,
  EmptyInput,
  NonFiniteData,
  DimensionMismatch,
  GraphMismatch,
  ParseError,
  ShapeError,
  FormatError,
  IoError,
  NonSymmetric,
  NotPositiveDefinite,
  NoConvergence,
  SingularGram,
  DegenerateSpectrum,
  DegenerateVariance,
};

/// Coarse grouping used by the CLI to pick an exit status.
enum class ErrorCategory { Usage, Data, Numerical };

const char* to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return nppe::category(code_); }
  /// Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace nppe
