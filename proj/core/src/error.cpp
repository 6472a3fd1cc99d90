#include "psdfactor/error.hpp"

namespace psdfactor {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotNonnegSelfadjoint: return "NotNonnegSelfadjoint";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::NotScalarNonneg: return "NotScalarNonneg";
    case ErrorCode::NotIntertwining: return "NotIntertwining";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotNonneg: return "NotNonneg";
    case ErrorCode::Unrepresentable: return "Unrepresentable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace psdfactor
