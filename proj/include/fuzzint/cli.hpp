#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fuzzint/direction.hpp"
#include "fuzzint/errors.hpp"

namespace fuzzint::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,   // bad input, parse or usage errors
  kCheckFailed = 3,  // a residual or structural check failed
  kIo = 4,
};

int exit_code_for(ErrorCode code);

/// Parses a comma-separated direction, normalizing it with a warning on
/// `warn` when its norm is off by more than 1e-6.
Point parse_direction(const std::string& text, std::ostream& warn);

/// Entry point behind the fuzzint binary; `args` excludes the program name.
///
///   integrate <scenario> [--set IDS|all] [--grid N] [--tol X] [--out STEM]
///   decompose <scenario> [--direction X,Y,..] [--grid N] [--tol X] [--out STEM]
///   verify    <scenario> [--with-oracle] [--tail Q N] [--seed S] [--direction ..] [--out FILE]
///   plot-data <scenario> [--set IDS|all] [--out STEM]
///
/// --config FILE reads the same options from a TOML/INI file; command-line
/// flags take precedence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fuzzint::cli
