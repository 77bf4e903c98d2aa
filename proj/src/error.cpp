#include "modlab/error.hpp"

namespace modlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAnAlgebra: return "NotAnAlgebra";
    case ErrorCode::ClosureDidNotConverge: return "ClosureDidNotConverge";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotStandard: return "NotStandard";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::SupportEscapesGrid: return "SupportEscapesGrid";
    case ErrorCode::SupportNotRightWedge: return "SupportNotRightWedge";
    case ErrorCode::OverlappingCaps: return "OverlappingCaps";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ExperimentError: return "ExperimentError";
  }
  return "Unknown";
}

}  // namespace modlab
