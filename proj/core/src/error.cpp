#include "sqvar/error.hpp"

namespace sqvar {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotFirstOrder: return "NotFirstOrder";
    case ErrorCode::CallbackFailure: return "CallbackFailure";
    case ErrorCode::RankDeficientActiveJacobian: return "RankDeficientActiveJacobian";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::size_t line, const std::string& reason)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason),
      line_(line),
      reason_(reason) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace sqvar
