#include "fuzzint/errors.hpp"

namespace fuzzint {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::NestingViolation: return "NESTING_VIOLATION";
    case ErrorCode::LevelRange: return "LEVEL_RANGE";
    case ErrorCode::NotASelection: return "NOT_A_SELECTION";
    case ErrorCode::NullSet: return "NULL_SET";
    case ErrorCode::NonConvergence: return "NON_CONVERGENCE";
    case ErrorCode::InvalidIndex: return "INVALID_INDEX";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::UnsupportedDimension: return "UNSUPPORTED_DIMENSION";
    case ErrorCode::CoverageViolation: return "COVERAGE_VIOLATION";
    case ErrorCode::InstanceTooLarge: return "INSTANCE_TOO_LARGE";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace fuzzint
