#include "fuzzint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "fuzzint/errors.hpp"

namespace fuzzint::oracle {

double oracle_support(const ConvexBody& a, const Direction& u) {
  if (a.dims() != u.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "oracle_support: dimension mismatch");
  }
  const std::vector<Point> verts = a.vertices();
  std::vector<double> values(verts.size());
  std::transform(verts.begin(), verts.end(), values.begin(), [&](const Point& v) {
    return std::inner_product(v.begin(), v.end(), u.coords().begin(), 0.0);
  });
  return *std::max_element(values.begin(), values.end());
}

SampleGrid::SampleGrid(Point lower, Point upper, double step)
    : lower_(std::move(lower)), upper_(std::move(upper)), step_(step) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sample grid bounds differ in dimension");
  }
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw Error(ErrorCode::InvalidArgument, "sample grid step must be positive");
  }
  double total = 1.0;
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!(upper_[k] >= lower_[k])) {
      throw Error(ErrorCode::InvalidArgument, "sample grid box is inverted");
    }
    const auto c = static_cast<std::size_t>(std::floor((upper_[k] - lower_[k]) / step_ + 1e-9)) + 1;
    counts_.push_back(c);
    total *= static_cast<double>(c);
  }
  if (total > static_cast<double>(kMaxPoints)) {
    throw Error(ErrorCode::InstanceTooLarge,
                "sample grid would have " + std::to_string(total) + " points");
  }
}

SampleGrid SampleGrid::covering(const std::vector<const ConvexBody*>& bodies, double step) {
  if (bodies.empty()) throw Error(ErrorCode::InvalidArgument, "no bodies to cover");
  const std::size_t d = bodies.front()->dims();
  Point lo(d, std::numeric_limits<double>::infinity());
  Point hi(d, -std::numeric_limits<double>::infinity());
  for (const ConvexBody* b : bodies) {
    if (b->dims() != d) throw Error(ErrorCode::DimensionMismatch, "covering: dimension mismatch");
    for (std::size_t i = 0; i < b->size(); ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        lo[k] = std::min(lo[k], b->vertex(i)[k]);
        hi[k] = std::max(hi[k], b->vertex(i)[k]);
      }
    }
  }
  if (!(step > 0.0)) {
    double diam2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) diam2 += (hi[k] - lo[k]) * (hi[k] - lo[k]);
    step = std::sqrt(diam2) / 200.0;
    if (step == 0.0) step = 1.0;
  }
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = std::floor(lo[k] / step) * step;
    hi[k] = std::ceil(hi[k] / step) * step;
  }
  return SampleGrid(std::move(lo), std::move(hi), step);
}

std::size_t SampleGrid::point_count() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::size_t{1}, std::multiplies<>());
}

Point SampleGrid::point(std::size_t flat_index) const {
  Point p(dims());
  for (std::size_t k = 0; k < dims(); ++k) {
    p[k] = lower_[k] + static_cast<double>(flat_index % counts_[k]) * step_;
    flat_index /= counts_[k];
  }
  return p;
}

void SampleGrid::require_covers(const ConvexBody& body) const {
  if (body.dims() != dims()) throw Error(ErrorCode::DimensionMismatch, "grid/body dimension");
  const double slack = 1e-9 * step_;
  for (std::size_t i = 0; i < body.size(); ++i) {
    for (std::size_t k = 0; k < dims(); ++k) {
      const double c = body.vertex(i)[k];
      if (c < lower_[k] - slack || c > upper_[k] + slack) {
        throw Error(ErrorCode::CoverageViolation,
                    "vertex " + std::to_string(i) + " lies outside the sample grid");
      }
    }
  }
}

Grade oracle_supmin_add(const FuzzyNumber& u, const FuzzyNumber& v, const Point& x,
                        const SampleGrid& grid, double tol) {
  if (u.dims() != grid.dims() || v.dims() != grid.dims() || x.size() != grid.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "oracle_supmin_add: dimension mismatch");
  }
  grid.require_covers(u.bodies().front());
  grid.require_covers(v.bodies().front());
  double best = 0.0;
  Point z(x.size());
  for (std::size_t idx = 0; idx < grid.point_count() && best < 1.0; ++idx) {
    const Point y = grid.point(idx);
    const double gu = membership(u, y, tol).value();
    if (gu <= best) continue;
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = x[k] - y[k];
    best = std::max(best, std::min(gu, membership(v, z, tol).value()));
  }
  return Grade(best);
}

namespace {

// Projection of x onto aff{pts}, via the normal equations of the difference
// basis solved by Gaussian elimination. Empty when the points are affinely
// dependent or the projection leaves the simplex.
std::optional<double> simplex_projection_distance(const Point& x, const std::vector<const Point*>& pts) {
  const std::size_t k = pts.size() - 1;
  const std::size_t d = x.size();
  const Point& p0 = *pts[0];
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double g = 0.0;
      for (std::size_t c = 0; c < d; ++c) g += ((*pts[i + 1])[c] - p0[c]) * ((*pts[j + 1])[c] - p0[c]);
      m[i][j] = g;
    }
    double rhs = 0.0;
    for (std::size_t c = 0; c < d; ++c) rhs += ((*pts[i + 1])[c] - p0[c]) * (x[c] - p0[c]);
    m[i][k] = rhs;
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < k; ++i) trace += m[i][i];
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    if (std::abs(m[piv][col]) <= 1e-12 * std::max(trace, 1e-300)) return std::nullopt;
    std::swap(m[piv], m[col]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  std::vector<double> beta(k);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    beta[i] = m[i][k] / m[i][i];
    if (beta[i] < -1e-12) return std::nullopt;
    sum += beta[i];
  }
  if (1.0 - sum < -1e-12) return std::nullopt;
  double dist2 = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    double proj = p0[c];
    for (std::size_t i = 0; i < k; ++i) proj += beta[i] * ((*pts[i + 1])[c] - p0[c]);
    dist2 += (proj - x[c]) * (proj - x[c]);
  }
  return std::sqrt(dist2);
}

}  // namespace

double oracle_hull_distance(const Point& x, const std::vector<Point>& cloud) {
  if (cloud.empty()) throw Error(ErrorCode::InvalidArgument, "empty vertex cloud");
  const std::size_t d = x.size();
  if (d > kMaxCaratheodoryDims || cloud.size() > kMaxCaratheodoryVertices) {
    throw Error(ErrorCode::InstanceTooLarge, "Caratheodory oracle limited to d <= 3 and 12 vertices");
  }
  for (const auto& p : cloud) {
    if (p.size() != d) throw Error(ErrorCode::DimensionMismatch, "cloud point dimension");
  }
  const std::size_t n = cloud.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<const Point*> pts;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) pts.push_back(&cloud[i]);
    }
    if (pts.size() > d + 1) continue;
    if (auto dist = simplex_projection_distance(x, pts)) best = std::min(best, *dist);
  }
  return best;
}

bool oracle_hull_membership(const Point& x, const std::vector<Point>& cloud, double tol) {
  return oracle_hull_distance(x, cloud) <= tol;
}

std::vector<Point> weighted_sum_points(const std::vector<const ConvexBody*>& bodies,
                                       const std::vector<double>& weights) {
  if (bodies.empty() || bodies.size() != weights.size()) {
    throw Error(ErrorCode::InvalidArgument, "weighted_sum_points: bodies/weights mismatch");
  }
  const std::size_t d = bodies.front()->dims();
  double total = 1.0;
  for (const ConvexBody* b : bodies) total *= static_cast<double>(b->size());
  if (total > 2e5) throw Error(ErrorCode::InstanceTooLarge, "too many vertex combinations");

  std::vector<std::size_t> pick(bodies.size(), 0);
  std::vector<Point> out;
  for (;;) {
    Point p(d, 0.0);
    for (std::size_t b = 0; b < bodies.size(); ++b) {
      const auto v = bodies[b]->vertex(pick[b]);
      for (std::size_t c = 0; c < d; ++c) p[c] += weights[b] * v[c];
    }
    out.push_back(std::move(p));
    std::size_t b = 0;
    while (b < bodies.size() && ++pick[b] == bodies[b]->size()) pick[b++] = 0;
    if (b == bodies.size()) break;
  }
  return out;
}

}  // namespace fuzzint::oracle
