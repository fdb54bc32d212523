#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fuzzint {

using Point = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// A unit vector in R^d, standing in for a norm-one functional on R^d.
class Direction {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  /// Requires |coords| within kUnitTolerance of 1.
  explicit Direction(Point coords);

  /// Rescales a nonzero vector to unit length.
  static Direction normalized(Point coords);
  static Direction axis(std::size_t dims, std::size_t axis, bool negative = false);

  std::size_t dims() const noexcept { return coords_.size(); }
  const Point& coords() const noexcept { return coords_; }
  std::span<const double> span() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }

  Direction operator-() const;

 private:
  struct Unchecked {};
  Direction(Point coords, Unchecked) : coords_(std::move(coords)) {}

  Point coords_;
};

/// Finite, antipodally symmetric probing set of unit directions.
class DirectionGrid {
 public:
  static constexpr std::size_t kDefaultPlanarCount = 64;
  static constexpr std::size_t kDefaultSampleCount = 128;
  static constexpr unsigned kSampleSeed = 20170101u;

  /// Validates symmetry, spanning and distinctness.
  DirectionGrid(std::size_t dims, std::vector<Direction> directions);

  // d = 1: {+1, -1}. d = 2: `count` equally spaced angles (rounded up to even,
  // default 64). d >= 3: the 2d signed axes plus `count` seeded random
  // directions (rounded up to even, default 128) closed under negation.
  static DirectionGrid make_default(std::size_t dims, std::size_t count = 0);
  /// Default construction sized to about `total` directions in all (axes
  /// included). d = 1 always has two.
  static DirectionGrid with_total(std::size_t dims, std::size_t total);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return directions_.size(); }
  const std::vector<Direction>& directions() const noexcept { return directions_; }
  auto begin() const noexcept { return directions_.begin(); }
  auto end() const noexcept { return directions_.end(); }
  const Direction& operator[](std::size_t i) const { return directions_[i]; }

 private:
  std::size_t dims_;
  std::vector<Direction> directions_;
};

}  // namespace fuzzint
