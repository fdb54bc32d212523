#include "fuzzint/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <string>

#include "fuzzint/errors.hpp"
#include "nearest_point.hpp"

namespace fuzzint {
namespace {

void require_dims(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": dimension " +
                                                  std::to_string(a) + " vs " + std::to_string(b));
  }
}

bool lex_less(std::span<const double> a, std::span<const double> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t argmax_vertex(const ConvexBody& a, std::span<const double> u) {
  std::size_t best = 0;
  double best_value = dot(u, a.vertex(0));
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double value = dot(u, a.vertex(i));
    if (value > best_value || (value == best_value && lex_less(a.vertex(best), a.vertex(i)))) {
      best = i;
      best_value = value;
    }
  }
  return best;
}

// Denser than the default grid: every maximizer found here skips a solve.
constexpr std::size_t kPruneSeedCount = 512;

const DirectionGrid& seed_grid(std::size_t dims) {
  static std::mutex mutex;
  static std::map<std::size_t, DirectionGrid> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(dims);
  if (it == cache.end()) it = cache.emplace(dims, DirectionGrid::make_default(dims, kPruneSeedCount)).first;
  return it->second;
}

}  // namespace

ConvexBody::ConvexBody(std::size_t dims, std::vector<double> coords)
    : dims_(dims), coords_(std::move(coords)) {}

ConvexBody::ConvexBody(std::size_t dims, const std::vector<Point>& vertices) : dims_(dims) {
  if (dims == 0) throw Error(ErrorCode::InvalidArgument, "body dimension must be >= 1");
  if (vertices.empty()) throw Error(ErrorCode::InvalidArgument, "body needs at least one vertex");
  coords_.reserve(vertices.size() * dims);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].size() != dims) {
      throw Error(ErrorCode::DimensionMismatch,
                  "vertex " + std::to_string(i) + " has " + std::to_string(vertices[i].size()) +
                      " coordinates, expected " + std::to_string(dims));
    }
    for (double c : vertices[i]) {
      if (!std::isfinite(c)) {
        throw Error(ErrorCode::InvalidArgument, "vertex " + std::to_string(i) + " is not finite");
      }
      coords_.push_back(c);
    }
  }
}

ConvexBody ConvexBody::singleton(Point x) {
  const std::size_t d = x.size();
  return ConvexBody(d, std::vector<Point>{std::move(x)});
}

ConvexBody ConvexBody::origin(std::size_t dims) { return singleton(Point(dims, 0.0)); }

ConvexBody ConvexBody::cube(const Point& center, double radius) {
  const std::size_t d = center.size();
  std::vector<Point> corners;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    Point p = center;
    for (std::size_t k = 0; k < d; ++k) p[k] += (mask >> k & 1U) ? radius : -radius;
    corners.push_back(std::move(p));
  }
  return ConvexBody(d, corners);
}

Point ConvexBody::vertex_point(std::size_t i) const {
  auto v = vertex(i);
  return Point(v.begin(), v.end());
}

std::vector<Point> ConvexBody::vertices() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(vertex_point(i));
  return out;
}

double ConvexBody::max_vertex_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < size(); ++i) m = std::max(m, norm(vertex(i)));
  return m;
}

double support(const ConvexBody& a, const Direction& u) {
  require_dims(a.dims(), u.dims(), "support");
  double best = dot(u.span(), a.vertex(0));
  for (std::size_t i = 1; i < a.size(); ++i) best = std::max(best, dot(u.span(), a.vertex(i)));
  return best;
}

ConvexBody minkowski_add(const ConvexBody& a, const ConvexBody& b, bool prune_result) {
  require_dims(a.dims(), b.dims(), "minkowski_add");
  const std::size_t d = a.dims();
  std::vector<double> coords;
  coords.reserve(a.size() * b.size() * d);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto va = a.vertex(i);
      auto vb = b.vertex(j);
      for (std::size_t k = 0; k < d; ++k) coords.push_back(va[k] + vb[k]);
    }
  }
  ConvexBody sum(d, std::move(coords));
  return prune_result ? prune(sum) : sum;
}

ConvexBody scale(const ConvexBody& a, double k) {
  if (k == 0.0) return ConvexBody::origin(a.dims());
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  for (double& c : coords) c *= k;
  return ConvexBody(a.dims(), std::move(coords));
}

ConvexBody translate_by_negative(const ConvexBody& a, std::span<const double> x) {
  require_dims(a.dims(), x.size(), "translate_by_negative");
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= x[i % a.dims()];
  return ConvexBody(a.dims(), std::move(coords));
}

ConvexBody hull_union(const ConvexBody& a, const ConvexBody& b) {
  require_dims(a.dims(), b.dims(), "hull_union");
  std::vector<double> coords(a.coords().begin(), a.coords().end());
  coords.insert(coords.end(), b.coords().begin(), b.coords().end());
  return ConvexBody(a.dims(), std::move(coords));
}

std::vector<Point> planar_hull(const ConvexBody& a) {
  if (a.dims() != 2) {
    throw Error(ErrorCode::UnsupportedDimension, "planar_hull needs a 2-dimensional body");
  }
  std::vector<Point> pts = a.vertices();
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const Point& o, const Point& p, const Point& q) {
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0]);
  };
  // Andrew's monotone chain: lower hull left to right, then upper hull back.
  std::vector<Point> hull;
  hull.reserve(2 * pts.size());
  for (const Point& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
    hull.push_back(p);
  }
  const std::size_t lower = hull.size() + 1;
  for (std::size_t k = pts.size() - 1; k-- > 0;) {
    while (hull.size() >= lower && cross(hull[hull.size() - 2], hull.back(), pts[k]) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(pts[k]);
  }
  hull.pop_back();
  return hull;
}

ConvexBody prune(const ConvexBody& a) {
  const std::size_t d = a.dims();
  std::vector<std::size_t> order(a.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return lex_less(a.vertex(i), a.vertex(j)); });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t i, std::size_t j) {
                            auto vi = a.vertex(i);
                            auto vj = a.vertex(j);
                            return std::equal(vi.begin(), vi.end(), vj.begin());
                          }),
              order.end());

  auto gather = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> coords;
    coords.reserve(idx.size() * d);
    for (std::size_t i : idx) {
      auto v = a.vertex(i);
      coords.insert(coords.end(), v.begin(), v.end());
    }
    return coords;
  };

  if (order.size() <= 1) return ConvexBody(d, gather(order));
  if (d == 1) {
    std::vector<std::size_t> ends{order.front(), order.back()};
    return ConvexBody(d, gather(ends));
  }
  if (d == 2) {
    std::vector<Point> ring = planar_hull(a);
    std::sort(ring.begin(), ring.end());
    return ConvexBody(d, ring);
  }

  const double eps = 1e-12 * std::max(1.0, a.max_vertex_norm());

  // Grid maximizers are extreme points; anything inside their hull goes.
  // A seed that wins only by rounding noise may sit on a face; recheck those.
  std::vector<char> is_seed(a.size(), 0);
  std::vector<char> weak_seed(a.size(), 0);
  std::vector<std::size_t> seeds;
  for (const Direction& u : seed_grid(d)) {
    std::size_t best = order.front();
    double best_value = dot(u.span(), a.vertex(best));
    double runner_up = -std::numeric_limits<double>::infinity();
    for (std::size_t i : order) {
      if (i == order.front()) continue;
      const double value = dot(u.span(), a.vertex(i));
      if (value > best_value || (value == best_value && lex_less(a.vertex(best), a.vertex(i)))) {
        runner_up = best_value;
        best = i;
        best_value = value;
      } else {
        runner_up = std::max(runner_up, value);
      }
    }
    if (!is_seed[best]) {
      is_seed[best] = 1;
      weak_seed[best] = 1;
      seeds.push_back(best);
    }
    if (best_value - runner_up > eps) weak_seed[best] = 0;
  }
  const std::vector<double> seed_coords = gather(seeds);

  std::vector<std::size_t> survivors;
  std::vector<std::size_t> uncertain;
  for (std::size_t i : order) {
    if (is_seed[i]) {
      survivors.push_back(i);
      if (weak_seed[i]) uncertain.push_back(i);
      continue;
    }
    auto r = detail::nearest_point(seed_coords, d, a.vertex(i), eps, kMaxSolverIterations);
    if (r.norm > eps) {
      survivors.push_back(i);
      uncertain.push_back(i);
    }
  }

  // Removing a point inside the hull of the others never changes the hull,
  // so candidates can be tested and dropped one at a time.
  for (std::size_t cand : uncertain) {
    std::vector<std::size_t> others;
    others.reserve(survivors.size());
    for (std::size_t i : survivors) {
      if (i != cand) others.push_back(i);
    }
    auto r = detail::nearest_point(gather(others), d, a.vertex(cand), eps, kMaxSolverIterations);
    if (r.norm <= eps) survivors = std::move(others);
  }
  std::sort(survivors.begin(), survivors.end(),
            [&](std::size_t i, std::size_t j) { return lex_less(a.vertex(i), a.vertex(j)); });
  return ConvexBody(d, gather(survivors));
}

Point min_norm_point(const ConvexBody& a, double tol, int max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  const Point zero(a.dims(), 0.0);
  auto r = detail::nearest_point(a.coords(), a.dims(), zero, tol, max_iterations);
  if (r.status == detail::SolveStatus::IterationCap) {
    throw Error(ErrorCode::NonConvergence,
                "min-norm solver hit " + std::to_string(max_iterations) + " iterations");
  }
  return r.point;
}

double distance(std::span<const double> x, const ConvexBody& a, double tol) {
  require_dims(a.dims(), x.size(), "distance");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  auto r = detail::nearest_point(a.coords(), a.dims(), x, tol, kMaxSolverIterations);
  if (r.status == detail::SolveStatus::IterationCap) {
    throw Error(ErrorCode::NonConvergence, "distance solver hit the iteration cap");
  }
  return r.norm;
}

bool contains(const ConvexBody& a, std::span<const double> x, double tol) {
  return distance(x, a, tol) <= tol;
}

bool subset_of(const ConvexBody& a, const ConvexBody& b, double tol) {
  require_dims(a.dims(), b.dims(), "subset_of");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!contains(b, a.vertex(i), tol)) return false;
  }
  return true;
}

double hausdorff(const ConvexBody& a, const ConvexBody& b, double tol) {
  require_dims(a.dims(), b.dims(), "hausdorff");
  double h = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) h = std::max(h, distance(a.vertex(i), b, tol));
  for (std::size_t i = 0; i < b.size(); ++i) h = std::max(h, distance(b.vertex(i), a, tol));
  return h;
}

double hausdorff_support_estimate(const ConvexBody& a, const ConvexBody& b,
                                  const DirectionGrid& grid) {
  require_dims(a.dims(), b.dims(), "hausdorff_support_estimate");
  require_dims(a.dims(), grid.dims(), "hausdorff_support_estimate");
  double h = 0.0;
  for (const Direction& u : grid) h = std::max(h, std::abs(support(a, u) - support(b, u)));
  return h;
}

Point canonical_selection(const ConvexBody& a, const Direction& u) {
  require_dims(a.dims(), u.dims(), "canonical_selection");
  return a.vertex_point(argmax_vertex(a, u.span()));
}

}  // namespace fuzzint
