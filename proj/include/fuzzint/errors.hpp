#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzint {

enum class ErrorCode {
  DimensionMismatch,
  NestingViolation,
  LevelRange,
  NotASelection,
  NullSet,
  NonConvergence,
  InvalidIndex,
  InvalidArgument,
  UnsupportedDimension,
  CoverageViolation,
  InstanceTooLarge,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every library failure carries a stable code; what() is "<CODE>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace fuzzint
