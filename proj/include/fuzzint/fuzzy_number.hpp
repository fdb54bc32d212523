#pragma once

#include <cstddef>
#include <vector>

#include "fuzzint/convex_body.hpp"

namespace fuzzint {

/// Membership grade in [0, 1].
class Grade {
 public:
  explicit Grade(double value);
  double value() const noexcept { return value_; }
  friend bool operator==(Grade, Grade) = default;
  friend auto operator<=>(Grade, Grade) = default;

 private:
  double value_;
};

/// Generalized fuzzy number as a finite nested family of level bodies.
///
/// Stored levels r_1 < ... < r_m = 1 with bodies C_1 ⊇ ... ⊇ C_m. The cut at
/// r is C_i for the smallest r_i >= r, i.e. the cut is constant on each
/// right-closed step (r_{i-1}, r_i].
class FuzzyNumber {
 public:
  /// Validates level range and nesting (NESTING_VIOLATION names the pair).
  static FuzzyNumber from_level_family(std::vector<double> levels, std::vector<ConvexBody> bodies,
                                       double tol = kDefaultTolerance);
  /// The null element: grade 1 at the origin, 0 elsewhere.
  static FuzzyNumber null_element(std::size_t dims);

  std::size_t dims() const noexcept { return bodies_.front().dims(); }
  std::size_t level_count() const noexcept { return levels_.size(); }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::vector<ConvexBody>& bodies() const noexcept { return bodies_; }

  /// Throws LEVEL_RANGE for r outside (0, 1].
  const ConvexBody& level_cut(double r) const;

 private:
  FuzzyNumber(std::vector<double> levels, std::vector<ConvexBody> bodies)
      : levels_(std::move(levels)), bodies_(std::move(bodies)) {}

  std::vector<double> levels_;
  std::vector<ConvexBody> bodies_;

  friend FuzzyNumber add(const FuzzyNumber&, const FuzzyNumber&, bool);
  friend FuzzyNumber scale_fuzzy(const FuzzyNumber&, double);
  friend FuzzyNumber translate_fuzzy(const FuzzyNumber&, std::span<const double>);
};

/// Largest stored level whose body contains x; 0 if none does.
Grade membership(const FuzzyNumber& u, std::span<const double> x, double tol = kDefaultTolerance);

/// Level-wise Minkowski sum on the merged level grid.
FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v, bool prune = false);
/// Level-wise scaling; k = 0 gives the indicator of {0}.
FuzzyNumber scale_fuzzy(const FuzzyNumber& u, double k);
/// Every level translated by -x.
FuzzyNumber translate_fuzzy(const FuzzyNumber& u, std::span<const double> x);
/// Indicator of the single point x.
FuzzyNumber fuzzy_from_point(Point x);

/// Union of the two level grids, sorted.
std::vector<double> merged_levels(const std::vector<double>& a, const std::vector<double>& b);

/// Max over the merged level grid of the level-wise Hausdorff distance.
double fuzzy_hausdorff(const FuzzyNumber& u, const FuzzyNumber& v, double tol = kDefaultTolerance);

}  // namespace fuzzint
