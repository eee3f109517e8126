#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqvar {

enum class ErrorCode {
  DimensionMismatch,
  NonFinite,
  SingularSystem,
  NotSymmetric,
  RankDeficient,
  NotFirstOrder,
  CallbackFailure,
  RankDeficientActiveJacobian,
  HypothesisViolated,
  OutOfRange,
  InvalidArgument,
  ParseError,
  UnsupportedFeature,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Exception type thrown by every sqvar routine. The code identifies the
/// failure class; what() carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with the 1-based line number of the offending record.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason);

  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

inline void require(bool condition, ErrorCode code, const char* message) {
  if (!condition) fail(code, message);
}

}  // namespace sqvar
