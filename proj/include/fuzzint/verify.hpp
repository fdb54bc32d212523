#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuzzint/scenario.hpp"

namespace fuzzint {

enum class RowStatus { Pass, Fail, Trivial, Skipped };

std::string_view to_string(RowStatus status);

struct VerifyRow {
  std::string id;
  RowStatus status = RowStatus::Pass;
  double residual = 0.0;
  double bound = 0.0;
  std::string description;
};

struct VerifyOptions {
  bool with_oracle = false;
  std::optional<double> tail_ratio;
  std::size_t tail_count = 0;
  std::uint64_t seed = 0;
  /// Selection direction for the decomposition rows; defaults to the first
  /// grid direction.
  std::optional<Direction> direction;
};

struct VerifyReport {
  std::string header;
  std::vector<VerifyRow> rows;

  bool all_pass() const;
  /// Fixed-width table, one row per check.
  std::string format() const;
};

/// Every level body moved toward the level-1 canonical selection by `factor`
/// (in [0, 1]); the result is dominated by `gamma`.
FuzzyMapping shrink_toward_selection(const FuzzyMapping& gamma, const Direction& u, double factor);

/// Runs every check on the scenario. Random choices (partitions, subsets,
/// probe levels and points) come from `options.seed` only, so the report is
/// reproducible.
VerifyReport run_verify(const Scenario& scenario, const VerifyOptions& options);

}  // namespace fuzzint
