#include "qbg/error.hpp"

namespace qbg {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::UnsortedLevels: return "UnsortedLevels";
    case ErrorCode::NonPositiveDegeneracy: return "NonPositiveDegeneracy";
    case ErrorCode::NonFiniteLevel: return "NonFiniteLevel";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::AllLevelsCutOff: return "AllLevelsCutOff";
    case ErrorCode::NonFiniteExponent: return "NonFiniteExponent";
    case ErrorCode::OrderTooLarge: return "OrderTooLarge";
    case ErrorCode::ZeroLeadingMultiplier: return "ZeroLeadingMultiplier";
    case ErrorCode::OutsideConvergenceDomain: return "OutsideConvergenceDomain";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::TooFewLevels: return "TooFewLevels";
    case ErrorCode::InfeasibleTargets: return "InfeasibleTargets";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

}  // namespace qbg
