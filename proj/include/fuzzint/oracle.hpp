#pragma once

#include <cstddef>
#include <vector>

#include "fuzzint/fuzzy_number.hpp"

// Slow brute-force references for cross-checking the kernel. They share no
// solver code with it and refuse instances above their size guards rather
// than fall back to the fast path.
namespace fuzzint::oracle {

/// Exhaustive vertex scan.
double oracle_support(const ConvexBody& a, const Direction& u);

/// Regular lattice lower + k * step, k = 0..counts-1 per axis.
class SampleGrid {
 public:
  static constexpr std::size_t kMaxPoints = 4'000'000;

  SampleGrid(Point lower, Point upper, double step);

  /// Box snapped to multiples of `step` covering every vertex of `bodies`.
  /// step <= 0 selects (box diameter) / 200.
  static SampleGrid covering(const std::vector<const ConvexBody*>& bodies, double step = 0.0);

  std::size_t dims() const noexcept { return lower_.size(); }
  double step() const noexcept { return step_; }
  const Point& lower() const noexcept { return lower_; }
  const Point& upper() const noexcept { return upper_; }
  std::size_t point_count() const;
  Point point(std::size_t flat_index) const;
  /// Throws COVERAGE_VIOLATION unless every vertex lies inside the box.
  void require_covers(const ConvexBody& body) const;

 private:
  Point lower_;
  Point upper_;
  double step_;
  std::vector<std::size_t> counts_;
};

/// max over grid points y of min(u(y), v(x - y)); a lower bound on the
/// sup-min sum that is exact when the optimum is attained on the grid.
Grade oracle_supmin_add(const FuzzyNumber& u, const FuzzyNumber& v, const Point& x,
                        const SampleGrid& grid, double tol = kDefaultTolerance);

inline constexpr std::size_t kMaxCaratheodoryDims = 3;
inline constexpr std::size_t kMaxCaratheodoryVertices = 12;

/// Distance from x to conv(cloud) by enumerating every subset of at most
/// d + 1 points, projecting onto its affine hull and keeping projections with
/// nonnegative barycentric coordinates.
double oracle_hull_distance(const Point& x, const std::vector<Point>& cloud);
bool oracle_hull_membership(const Point& x, const std::vector<Point>& cloud, double tol);

/// Every weighted sum sum_i w_i * v_i choosing one vertex per body; the hull
/// of the result is the weighted Minkowski sum. Guarded at 2e5 points.
std::vector<Point> weighted_sum_points(const std::vector<const ConvexBody*>& bodies,
                                       const std::vector<double>& weights);

}  // namespace fuzzint::oracle
