#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fuzzint/integral.hpp"

namespace fuzzint {

/// A measure space with one fuzzy number per atom, plus optional run
/// settings. JSON layout:
///
///   { "dims": 2,
///     "atoms": [ { "id": "w1", "weight": 0.5,
///                  "levels": [ { "level": 0.5, "vertices": [[0, 0], [4, 0]] },
///                              { "level": 1,   "vertices": [[1, 0]] } ] } ],
///     "grid": 64,
///     "tolerances": { "support": 1e-9, "geometry": 1e-12, "distance": 1e-9 } }
///
/// "grid" and "tolerances" are optional.
struct Scenario {
  FuzzyMapping mapping;
  std::optional<std::size_t> grid_size;
  Tolerances tol;

  DirectionGrid grid() const;
};

/// PARSE_ERROR for malformed JSON or wrong field types; library codes
/// (NESTING_VIOLATION, LEVEL_RANGE, ...) for invalid content. Messages start
/// with the offending field path, e.g. "atoms[1].levels[0].vertices[2]".
Scenario parse_scenario(std::string_view text);

/// IO_ERROR if the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Pretty-printed JSON that parse_scenario() reads back.
std::string dump_scenario(const Scenario& scenario);

/// Single-atom scenario (weight 1) holding `value`.
Scenario single_atom_scenario(const std::string& id, const FuzzyNumber& value,
                              std::optional<std::size_t> grid_size, const Tolerances& tol);

}  // namespace fuzzint
