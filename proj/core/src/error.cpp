#include "arithbar/error.hpp"

namespace arithbar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidRing: return "InvalidRing";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::ZeroNumerator: return "ZeroNumerator";
    case ErrorCode::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NonUnitGauge: return "NonUnitGauge";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::NotRankOne: return "NotRankOne";
    case ErrorCode::NonUnitWeight: return "NonUnitWeight";
    case ErrorCode::SingularRestriction: return "SingularRestriction";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace arithbar
