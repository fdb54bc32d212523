#include "fuzzint/fuzzy_number.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "fuzzint/errors.hpp"

namespace fuzzint {

Grade::Grade(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::LevelRange, "grade " + std::to_string(value) + " outside [0, 1]");
  }
}

FuzzyNumber FuzzyNumber::from_level_family(std::vector<double> levels,
                                           std::vector<ConvexBody> bodies, double tol) {
  if (levels.empty()) throw Error(ErrorCode::LevelRange, "at least one level is required");
  if (levels.size() != bodies.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(levels.size()) + " levels but " +
                                                std::to_string(bodies.size()) + " bodies");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] > 0.0 && levels[i] <= 1.0)) {
      throw Error(ErrorCode::LevelRange,
                  "level " + std::to_string(i) + " = " + std::to_string(levels[i]) +
                      " outside (0, 1]");
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw Error(ErrorCode::LevelRange,
                  "levels " + std::to_string(i - 1) + " and " + std::to_string(i) +
                      " are not strictly increasing");
    }
  }
  if (levels.back() != 1.0) {
    throw Error(ErrorCode::LevelRange, "last level must be 1");
  }
  const std::size_t d = bodies.front().dims();
  for (std::size_t i = 0; i < bodies.size(); ++i) {
    if (bodies[i].dims() != d) {
      throw Error(ErrorCode::DimensionMismatch, "level body " + std::to_string(i) +
                                                    " has dimension " +
                                                    std::to_string(bodies[i].dims()));
    }
  }
  for (std::size_t i = 0; i + 1 < bodies.size(); ++i) {
    if (!subset_of(bodies[i + 1], bodies[i], tol)) {
      throw Error(ErrorCode::NestingViolation,
                  "level " + std::to_string(i + 1) + " (r=" + std::to_string(levels[i + 1]) +
                      ") is not contained in level " + std::to_string(i) +
                      " (r=" + std::to_string(levels[i]) + "), pair (" + std::to_string(i) +
                      ", " + std::to_string(i + 1) + ")");
    }
  }
  return FuzzyNumber(std::move(levels), std::move(bodies));
}

FuzzyNumber FuzzyNumber::null_element(std::size_t dims) {
  return FuzzyNumber({1.0}, {ConvexBody::origin(dims)});
}

const ConvexBody& FuzzyNumber::level_cut(double r) const {
  if (!(r > 0.0 && r <= 1.0)) {
    throw Error(ErrorCode::LevelRange, "cut level " + std::to_string(r) + " outside (0, 1]");
  }
  auto it = std::lower_bound(levels_.begin(), levels_.end(), r);
  return bodies_[static_cast<std::size_t>(it - levels_.begin())];
}

Grade membership(const FuzzyNumber& u, std::span<const double> x, double tol) {
  // Nesting means the first containing body from the top is the answer.
  for (std::size_t i = u.level_count(); i-- > 0;) {
    if (contains(u.bodies()[i], x, tol)) return Grade(u.levels()[i]);
  }
  return Grade(0.0);
}

std::vector<double> merged_levels(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v, bool prune) {
  if (u.dims() != v.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "add: dimension " + std::to_string(u.dims()) +
                                                  " vs " + std::to_string(v.dims()));
  }
  std::vector<double> levels = merged_levels(u.levels(), v.levels());
  std::vector<ConvexBody> bodies;
  bodies.reserve(levels.size());
  for (double r : levels) bodies.push_back(minkowski_add(u.level_cut(r), v.level_cut(r), prune));
  return FuzzyNumber(std::move(levels), std::move(bodies));
}

FuzzyNumber scale_fuzzy(const FuzzyNumber& u, double k) {
  if (k == 0.0) return FuzzyNumber::null_element(u.dims());
  std::vector<ConvexBody> bodies;
  bodies.reserve(u.level_count());
  for (const auto& b : u.bodies()) bodies.push_back(scale(b, k));
  return FuzzyNumber(u.levels(), std::move(bodies));
}

FuzzyNumber translate_fuzzy(const FuzzyNumber& u, std::span<const double> x) {
  std::vector<ConvexBody> bodies;
  bodies.reserve(u.level_count());
  for (const auto& b : u.bodies()) bodies.push_back(translate_by_negative(b, x));
  return FuzzyNumber(u.levels(), std::move(bodies));
}

FuzzyNumber fuzzy_from_point(Point x) {
  return FuzzyNumber::from_level_family({1.0}, {ConvexBody::singleton(std::move(x))});
}

double fuzzy_hausdorff(const FuzzyNumber& u, const FuzzyNumber& v, double tol) {
  if (u.dims() != v.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "fuzzy_hausdorff: dimension mismatch");
  }
  double h = 0.0;
  for (double r : merged_levels(u.levels(), v.levels())) {
    h = std::max(h, hausdorff(u.level_cut(r), v.level_cut(r), tol));
  }
  return h;
}

}  // namespace fuzzint
