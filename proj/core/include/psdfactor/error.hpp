#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psdfactor {

enum class ErrorCode {
  NotHermitian,
  NoConvergence,
  NotPSD,
  NotSquare,
  DimensionMismatch,
  NotNonnegSelfadjoint,
  HypothesisFailed,
  NotScalarNonneg,
  NotIntertwining,
  NotInvertible,
  NotNonneg,
  Unrepresentable,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. Infeasible problems are results, not
/// errors; an Error always means a precondition or hypothesis was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psdfactor
