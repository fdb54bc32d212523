#include "fuzzint/measure_space.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <set>

#include "fuzzint/errors.hpp"

namespace fuzzint {

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<std::string> atom_ids,
                                       std::vector<double> weights)
    : ids_(std::move(atom_ids)), weights_(std::move(weights)) {
  if (ids_.size() != weights_.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(ids_.size()) + " atom ids but " +
                                                std::to_string(weights_.size()) + " weights");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (!seen.insert(ids_[i]).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate atom id '" + ids_[i] + "'");
    }
    if (!(weights_[i] >= 0.0) || !std::isfinite(weights_[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "atom '" + ids_[i] + "' has invalid weight " + std::to_string(weights_[i]));
    }
  }
}

std::size_t FiniteMeasureSpace::index_of(const std::string& id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) throw Error(ErrorCode::InvalidIndex, "unknown atom '" + id + "'");
  return static_cast<std::size_t>(it - ids_.begin());
}

MeasurableSet::MeasurableSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

MeasurableSet MeasurableSet::all(const FiniteMeasureSpace& space) {
  std::vector<std::size_t> idx(space.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return MeasurableSet(std::move(idx));
}

bool MeasurableSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool MeasurableSet::disjoint_from(const MeasurableSet& other) const {
  std::vector<std::size_t> common;
  std::set_intersection(indices_.begin(), indices_.end(), other.indices_.begin(),
                        other.indices_.end(), std::back_inserter(common));
  return common.empty();
}

MeasurableSet MeasurableSet::united(const MeasurableSet& other) const {
  std::vector<std::size_t> out;
  std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                 std::back_inserter(out));
  return MeasurableSet(std::move(out));
}

void MeasurableSet::validate(const FiniteMeasureSpace& space) const {
  for (std::size_t i : indices_) {
    if (i >= space.size()) {
      throw Error(ErrorCode::InvalidIndex, "atom index " + std::to_string(i) +
                                               " outside a space of " +
                                               std::to_string(space.size()) + " atoms");
    }
  }
}

double measure_of(const FiniteMeasureSpace& space, const MeasurableSet& a) {
  a.validate(space);
  double total = 0.0;
  for (std::size_t i : a.indices()) total += space.weight(i);
  return total;
}

FuzzyMapping::FuzzyMapping(FiniteMeasureSpace space, std::vector<FuzzyNumber> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(space_.size()) + " atoms but " +
                                                std::to_string(values_.size()) + " values");
  }
  if (values_.empty()) throw Error(ErrorCode::InvalidArgument, "mapping needs at least one atom");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i].dims() != values_.front().dims()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "atom '" + space_.id(i) + "' has dimension " +
                      std::to_string(values_[i].dims()));
    }
  }
}

LevelView::LevelView(const FuzzyMapping& mapping, double r) : mapping_(&mapping), r_(r) {
  if (!(r > 0.0 && r <= 1.0)) {
    throw Error(ErrorCode::LevelRange, "level " + std::to_string(r) + " outside (0, 1]");
  }
}

const ConvexBody& LevelView::operator[](std::size_t atom) const {
  return mapping_->value(atom).level_cut(r_);
}

LevelView mapping_level(const FuzzyMapping& mapping, double r) { return LevelView(mapping, r); }

Selection Selection::of(const FuzzyMapping& mapping, std::vector<Point> points, double r,
                        double tol) {
  if (points.size() != mapping.size()) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(points.size()) +
                                                " selection points for " +
                                                std::to_string(mapping.size()) + " atoms");
  }
  const LevelView level = mapping_level(mapping, r);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != mapping.dims()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "selection point for atom '" + mapping.space().id(i) + "' has wrong dimension");
    }
    if (!contains(level[i], points[i], tol)) {
      throw Error(ErrorCode::NotASelection,
                  "point for atom '" + mapping.space().id(i) + "' is outside its level-" +
                      std::to_string(r) + " body");
    }
  }
  return Selection(std::move(points), r);
}

Selection canonical_mapping_selection(const FuzzyMapping& mapping, const Direction& u, double r) {
  const LevelView level = mapping_level(mapping, r);
  std::vector<Point> points;
  points.reserve(mapping.size());
  for (std::size_t i = 0; i < mapping.size(); ++i) points.push_back(canonical_selection(level[i], u));
  return Selection(std::move(points), r);
}

double TailFamily::tail_bound(std::size_t m) const {
  return std::pow(ratio, static_cast<double>(m + 1)) / (1.0 - ratio) * radius;
}

TailFamily geometric_tail_family(const ConvexBody& body, double ratio, std::size_t count) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "tail ratio must lie in (0, 1)");
  }
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "tail family needs at least one atom");
  std::vector<std::string> ids;
  std::vector<double> weights;
  std::vector<FuzzyNumber> values;
  std::vector<MeasurableSet> sets;
  const FuzzyNumber value = FuzzyNumber::from_level_family({1.0}, {body});
  double w = 1.0;
  for (std::size_t i = 0; i < count; ++i) {
    w *= ratio;
    ids.push_back("t" + std::to_string(i + 1));
    weights.push_back(w);
    values.push_back(value);
    sets.emplace_back(std::vector<std::size_t>{i});
  }
  return TailFamily{FuzzyMapping(FiniteMeasureSpace(std::move(ids), std::move(weights)),
                                 std::move(values)),
                    std::move(sets), ratio, body.max_vertex_norm()};
}

}  // namespace fuzzint
