#pragma once

#include <stdexcept>
#include <string>

namespace minbasis {

/// Identity of a library failure. Codes are grouped by what the caller can
/// do about them: bad input data, a numerical breakdown, or an unmet
/// mathematical hypothesis.
enum class ErrorCode {
  // input / shape
  ShapeMismatch,
  InvalidProfile,
  DegreeTooSmall,
  ProfileMismatch,
  // numerical
  ConvergenceFailure,
  RankDeficient,
  ResidualTooLarge,
  InconsistentSequence,
  ExtractionFailure,
  DualityLost,
  BoundViolation,
  // hypothesis
  NotFullNormalRank,
  MinimalityRequired,
  OutsideNeighborhood,
  NotRobustBasis,
  NotFTSR,
  HypothesisFailed,
  PreconditionFailed,
};

enum class ErrorKind { Input, Numerical, Hypothesis };

constexpr ErrorKind kind_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch:
    case ErrorCode::InvalidProfile:
    case ErrorCode::DegreeTooSmall:
    case ErrorCode::ProfileMismatch:
      return ErrorKind::Input;
    case ErrorCode::ConvergenceFailure:
    case ErrorCode::RankDeficient:
    case ErrorCode::ResidualTooLarge:
    case ErrorCode::InconsistentSequence:
    case ErrorCode::ExtractionFailure:
    case ErrorCode::DualityLost:
    case ErrorCode::BoundViolation:
      return ErrorKind::Numerical;
    default:
      return ErrorKind::Hypothesis;
  }
}

constexpr const char* name_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::ProfileMismatch: return "ProfileMismatch";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::InconsistentSequence: return "InconsistentSequence";
    case ErrorCode::ExtractionFailure: return "ExtractionFailure";
    case ErrorCode::DualityLost: return "DualityLost";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::NotFullNormalRank: return "NotFullNormalRank";
    case ErrorCode::MinimalityRequired: return "MinimalityRequired";
    case ErrorCode::OutsideNeighborhood: return "OutsideNeighborhood";
    case ErrorCode::NotRobustBasis: return "NotRobustBasis";
    case ErrorCode::NotFTSR: return "NotFTSR";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name_of(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace minbasis
