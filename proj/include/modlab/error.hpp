#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modlab {

enum class ErrorCode {
  NotHermitian,
  NotPositive,
  SingularOperator,
  DimensionMismatch,
  NotAnAlgebra,
  ClosureDidNotConverge,
  BadWeights,
  InvalidState,
  NotStandard,
  NotInAlgebra,
  NotUnitary,
  GridMismatch,
  InvalidProfile,
  SupportEscapesGrid,
  SupportNotRightWedge,
  OverlappingCaps,
  ConfigError,
  ExperimentError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modlab
