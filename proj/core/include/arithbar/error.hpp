#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arithbar {

enum class ErrorCode {
  InvalidRing,
  RingMismatch,
  ZeroElement,
  NotAUnit,
  ZeroNumerator,
  PrecisionExceeded,
  ShapeMismatch,
  RankMismatch,
  NonUnitGauge,
  NotACocycle,
  NotRankOne,
  NonUnitWeight,
  SingularRestriction,
  SingularTransform,
  InvalidGraph,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code distinguishes failure kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arithbar
