#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fuzzint/direction.hpp"

namespace fuzzint {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr int kMaxSolverIterations = 10000;

/// Nonempty compact convex polytope in R^d given by a vertex list.
///
/// The semantic value is the convex hull of the list; repeated or interior
/// points are allowed and do not change any support value.
class ConvexBody {
 public:
  ConvexBody(std::size_t dims, const std::vector<Point>& vertices);

  static ConvexBody singleton(Point x);
  static ConvexBody origin(std::size_t dims);
  /// Axis-aligned cube [c - r, c + r]^d listed by its 2^d corners.
  static ConvexBody cube(const Point& center, double radius);

  std::size_t dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return coords_.size() / dims_; }

  std::span<const double> vertex(std::size_t i) const {
    return {coords_.data() + i * dims_, dims_};
  }
  Point vertex_point(std::size_t i) const;
  std::vector<Point> vertices() const;

  /// Row-major vertex coordinates, size() * dims() values.
  std::span<const double> coords() const noexcept { return coords_; }

  /// Largest Euclidean norm over the vertex list.
  double max_vertex_norm() const;

 private:
  ConvexBody(std::size_t dims, std::vector<double> coords);

  std::size_t dims_;
  std::vector<double> coords_;

  friend ConvexBody minkowski_add(const ConvexBody&, const ConvexBody&, bool);
  friend ConvexBody scale(const ConvexBody&, double);
  friend ConvexBody translate_by_negative(const ConvexBody&, std::span<const double>);
  friend ConvexBody hull_union(const ConvexBody&, const ConvexBody&);
  friend ConvexBody prune(const ConvexBody&);
};

double support(const ConvexBody& a, const Direction& u);

/// Pairwise vertex sums. With `prune` set, the result is reduced to its
/// extreme points (see prune()).
ConvexBody minkowski_add(const ConvexBody& a, const ConvexBody& b, bool prune = false);
ConvexBody scale(const ConvexBody& a, double k);
/// The set A - x.
ConvexBody translate_by_negative(const ConvexBody& a, std::span<const double> x);
/// conv(A u B).
ConvexBody hull_union(const ConvexBody& a, const ConvexBody& b);

/// Drops duplicate vertices and vertices lying (within 1e-12 relative to the
/// body's scale) in the hull of the remaining ones. Support values change by
/// at most that threshold.
ConvexBody prune(const ConvexBody& a);

/// Extreme points of a planar body in counterclockwise order, starting at the
/// lexicographically smallest one. UNSUPPORTED_DIMENSION unless d = 2.
std::vector<Point> planar_hull(const ConvexBody& a);

/// Point of the hull with smallest Euclidean norm, up to `tol`.
/// Throws NON_CONVERGENCE when the iteration cap is hit.
Point min_norm_point(const ConvexBody& a, double tol = kDefaultTolerance,
                     int max_iterations = kMaxSolverIterations);
double distance(std::span<const double> x, const ConvexBody& a, double tol = kDefaultTolerance);
bool contains(const ConvexBody& a, std::span<const double> x, double tol = kDefaultTolerance);
bool subset_of(const ConvexBody& a, const ConvexBody& b, double tol = kDefaultTolerance);
double hausdorff(const ConvexBody& a, const ConvexBody& b, double tol = kDefaultTolerance);
/// Lower bound on hausdorff() from support gaps on a finite grid.
double hausdorff_support_estimate(const ConvexBody& a, const ConvexBody& b,
                                  const DirectionGrid& grid);

/// Vertex maximizing <u, .>; ties go to the lexicographically largest vertex.
Point canonical_selection(const ConvexBody& a, const Direction& u);

}  // namespace fuzzint
