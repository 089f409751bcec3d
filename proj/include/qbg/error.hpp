#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qbg {

// Every failure the library reports carries one of these codes; the CLI
// prints error_name(code) as the first token of its diagnostic.
enum class ErrorCode {
  EmptySpectrum,
  UnsortedLevels,
  NonPositiveDegeneracy,
  NonFiniteLevel,
  LengthMismatch,
  NonPositiveScale,
  InvalidDistribution,
  InvalidParameter,
  AllLevelsCutOff,
  NonFiniteExponent,
  OrderTooLarge,
  ZeroLeadingMultiplier,
  OutsideConvergenceDomain,
  OrderMismatch,
  TooFewLevels,
  InfeasibleTargets,
  NotConverged,
  ParseError,
  ConfigError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qbg
