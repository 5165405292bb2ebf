#pragma once

#include <stdexcept>
#include <string>

namespace echcap {

enum class ErrorCode {
  EmptyInput,
  NonMonotoneAngles,
  ShapeClassViolation,
  ZeroVector,
  IncompleteCurve,
  ArcOutOfRange,
  ModeMismatch,
  NotCompleteOrNotStrict,
  InvalidPath,
  NonpositiveScale,
  InvalidArgument,
  SearchBudgetExceeded,
  BoxTooSmall,
  FaceAmbiguity,
  GenerationFailed,
  IoError,
  ConfigError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace echcap
