#pragma once

// Hand-written scenarios shared by the unit tests; the JSON files under
// tests/fixtures describe the same data.

#include "fuzzint/measure_space.hpp"

namespace fuzzint::testing {

inline ConvexBody square(double r) { return ConvexBody::cube({0.0, 0.0}, r); }

/// Two atoms, two levels each, with different level grids.
inline FuzzyMapping two_atom_mapping() {
  FiniteMeasureSpace space({"w1", "w2"}, {0.5, 1.5});
  FuzzyNumber a = FuzzyNumber::from_level_family(
      {0.5, 1.0}, {ConvexBody(2, {{0, 0}, {4, 0}, {4, 2}, {0, 2}}),
                   ConvexBody(2, {{1, 0}, {3, 0}, {2, 1}})});
  FuzzyNumber b = FuzzyNumber::from_level_family(
      {0.25, 1.0}, {ConvexBody(2, {{-1, -1}, {1, -1}, {0, 2}}), ConvexBody(2, {{0, 0}, {0, 1}})});
  return FuzzyMapping(std::move(space), {std::move(a), std::move(b)});
}

/// Weights 0.25 and 0.75 at the points (0,0) and (4,0).
inline FuzzyMapping point_mapping() {
  return FuzzyMapping(FiniteMeasureSpace({"p", "q"}, {0.25, 0.75}),
                      {fuzzy_from_point({0.0, 0.0}), fuzzy_from_point({4.0, 0.0})});
}

/// Nested squares whose radii depend on the atom; the last atom is null.
inline FuzzyMapping square_mapping() {
  return FuzzyMapping(
      FiniteMeasureSpace({"s1", "s2", "s3"}, {1.0, 2.0, 0.0}),
      {FuzzyNumber::from_level_family({0.5, 1.0}, {square(2.0), square(1.0)}),
       FuzzyNumber::from_level_family({0.5, 1.0}, {square(3.0), square(2.0)}),
       FuzzyNumber::from_level_family({1.0}, {square(5.0)})});
}

inline FuzzyMapping theta_mapping(std::size_t dims = 2) {
  return FuzzyMapping(FiniteMeasureSpace({"t1", "t2"}, {1.0, 3.0}),
                      {FuzzyNumber::null_element(dims), FuzzyNumber::null_element(dims)});
}

}  // namespace fuzzint::testing
