#pragma once

#include <stdexcept>
#include <string>

namespace twoadic {

enum class ErrorCode {
  NotEisenstein = 1,
  PrecisionTooSmall,
  PrecisionMismatch,
  PrecisionExhausted,
  NotAUnit,
  NotInvertible,
  NotPrimitive,
  ShapeViolation,
  NotTraceZero,
  NotASubgroup,
  Overflow,
  HypothesisViolated,
  InvalidArgument,
  ConfigError,
  Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace twoadic
