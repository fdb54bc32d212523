#include "fuzzint/direction.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "fuzzint/errors.hpp"

namespace fuzzint {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Direction::Direction(Point coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "direction must have at least one coordinate");
  }
  const double n = norm(coords_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::InvalidArgument,
                "direction norm " + std::to_string(n) + " is not 1");
  }
}

Direction Direction::normalized(Point coords) {
  const double n = norm(coords);
  if (coords.empty() || !std::isfinite(n) || n == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cannot normalize a zero or non-finite vector");
  }
  for (double& c : coords) c /= n;
  return Direction(std::move(coords), Unchecked{});
}

Direction Direction::axis(std::size_t dims, std::size_t axis, bool negative) {
  if (axis >= dims) throw Error(ErrorCode::InvalidIndex, "axis out of range");
  Point p(dims, 0.0);
  p[axis] = negative ? -1.0 : 1.0;
  return Direction(std::move(p), Unchecked{});
}

Direction Direction::operator-() const {
  Point p = coords_;
  for (double& c : p) c = -c;
  return Direction(std::move(p), Unchecked{});
}

namespace {

std::size_t numeric_rank(const std::vector<Direction>& dirs, std::size_t dims) {
  std::vector<Point> rows;
  rows.reserve(dirs.size());
  for (const auto& d : dirs) rows.push_back(d.coords());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < dims && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
    }
    if (std::abs(rows[pivot][col]) < 1e-10) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < dims; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

double max_abs_diff(const Point& a, const Point& b, double sign) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - sign * b[i]));
  return m;
}

}  // namespace

DirectionGrid::DirectionGrid(std::size_t dims, std::vector<Direction> directions)
    : dims_(dims), directions_(std::move(directions)) {
  if (dims_ == 0) throw Error(ErrorCode::InvalidArgument, "grid dimension must be >= 1");
  for (const auto& d : directions_) {
    if (d.dims() != dims_) {
      throw Error(ErrorCode::DimensionMismatch, "grid direction has wrong dimension");
    }
  }
  for (std::size_t i = 0; i < directions_.size(); ++i) {
    bool has_opposite = false;
    for (std::size_t j = 0; j < directions_.size(); ++j) {
      if (j > i && max_abs_diff(directions_[i].coords(), directions_[j].coords(), 1.0) <= 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "duplicate grid direction at index " + std::to_string(j));
      }
      if (max_abs_diff(directions_[i].coords(), directions_[j].coords(), -1.0) <= 1e-12) {
        has_opposite = true;
      }
    }
    if (!has_opposite) {
      throw Error(ErrorCode::InvalidArgument,
                  "grid is not antipodally symmetric at index " + std::to_string(i));
    }
  }
  if (numeric_rank(directions_, dims_) < dims_) {
    throw Error(ErrorCode::InvalidArgument, "grid directions do not span the space");
  }
}

DirectionGrid DirectionGrid::make_default(std::size_t dims, std::size_t count) {
  std::vector<Direction> dirs;
  if (dims == 1) {
    dirs.push_back(Direction::axis(1, 0));
    dirs.push_back(Direction::axis(1, 0, true));
  } else if (dims == 2) {
    std::size_t n = count == 0 ? kDefaultPlanarCount : count;
    n = std::max<std::size_t>(4, n + (n % 2));
    const std::size_t half = n / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
      dirs.push_back(Direction::normalized({std::cos(angle), std::sin(angle)}));
    }
    // Negate instead of evaluating cos/sin at angle + pi so symmetry is exact.
    for (std::size_t k = 0; k < half; ++k) dirs.push_back(-dirs[k]);
  } else {
    for (std::size_t a = 0; a < dims; ++a) {
      dirs.push_back(Direction::axis(dims, a));
      dirs.push_back(Direction::axis(dims, a, true));
    }
    std::size_t n = count == 0 ? kDefaultSampleCount : count;
    n += n % 2;
    std::mt19937_64 rng(kSampleSeed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<Direction> sampled;
    while (sampled.size() < n / 2) {
      Point p(dims);
      for (double& c : p) c = gauss(rng);
      if (norm(p) < 1e-6) continue;
      sampled.push_back(Direction::normalized(std::move(p)));
    }
    for (const auto& d : sampled) dirs.push_back(d);
    for (const auto& d : sampled) dirs.push_back(-d);
  }
  return DirectionGrid(dims, std::move(dirs));
}

DirectionGrid DirectionGrid::with_total(std::size_t dims, std::size_t total) {
  if (total == 0) throw Error(ErrorCode::InvalidArgument, "direction grid size must be positive");
  if (dims <= 2) return make_default(dims, total);
  if (total <= 2 * dims) {
    std::vector<Direction> axes;
    for (std::size_t a = 0; a < dims; ++a) {
      axes.push_back(Direction::axis(dims, a));
      axes.push_back(Direction::axis(dims, a, true));
    }
    return DirectionGrid(dims, std::move(axes));
  }
  return make_default(dims, total - 2 * dims);
}

}  // namespace fuzzint
