#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzint/fuzzy_number.hpp"

namespace fuzzint {

/// Atomic finite measure space: named atoms with nonnegative weights.
/// Zero-weight atoms are kept; they are the null sets of the model.
class FiniteMeasureSpace {
 public:
  FiniteMeasureSpace(std::vector<std::string> atom_ids, std::vector<double> weights);

  std::size_t size() const noexcept { return weights_.size(); }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Throws INVALID_INDEX for unknown ids.
  std::size_t index_of(const std::string& id) const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> weights_;
};

/// Set of atom indices, kept sorted without duplicates.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  explicit MeasurableSet(std::vector<std::size_t> indices);

  static MeasurableSet all(const FiniteMeasureSpace& space);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t size() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const;
  bool disjoint_from(const MeasurableSet& other) const;
  MeasurableSet united(const MeasurableSet& other) const;
  /// Throws INVALID_INDEX if an index is not an atom of `space`.
  void validate(const FiniteMeasureSpace& space) const;

  friend bool operator==(const MeasurableSet&, const MeasurableSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

double measure_of(const FiniteMeasureSpace& space, const MeasurableSet& a);

/// Simple fuzzy mapping: one fuzzy number per atom.
class FuzzyMapping {
 public:
  FuzzyMapping(FiniteMeasureSpace space, std::vector<FuzzyNumber> values);

  const FiniteMeasureSpace& space() const noexcept { return space_; }
  const std::vector<FuzzyNumber>& values() const noexcept { return values_; }
  const FuzzyNumber& value(std::size_t atom) const { return values_.at(atom); }
  std::size_t dims() const noexcept { return values_.front().dims(); }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  FiniteMeasureSpace space_;
  std::vector<FuzzyNumber> values_;
};

/// Atom-indexed view of the level mapping omega -> [value(omega)]^r.
class LevelView {
 public:
  LevelView(const FuzzyMapping& mapping, double r);

  double level() const noexcept { return r_; }
  std::size_t size() const noexcept { return mapping_->size(); }
  const ConvexBody& operator[](std::size_t atom) const;

 private:
  const FuzzyMapping* mapping_;
  double r_;
};

LevelView mapping_level(const FuzzyMapping& mapping, double r);

/// One point per atom.
class Selection {
 public:
  /// Checks points[i] in the level-r cut of every atom's value (NOT_A_SELECTION).
  static Selection of(const FuzzyMapping& mapping, std::vector<Point> points, double r = 1.0,
                      double tol = kDefaultTolerance);

  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& at(std::size_t atom) const { return points_.at(atom); }
  std::size_t size() const noexcept { return points_.size(); }
  double level() const noexcept { return level_; }

 private:
  Selection(std::vector<Point> points, double level)
      : points_(std::move(points)), level_(level) {}

  std::vector<Point> points_;
  double level_;

  friend Selection canonical_mapping_selection(const FuzzyMapping&, const Direction&, double);
};

/// canonical_selection of every atom's level-r body. Vertex outputs, so
/// membership is exact; a level-1 selection selects every level.
Selection canonical_mapping_selection(const FuzzyMapping& mapping, const Direction& u,
                                      double r = 1.0);

/// Atoms t1..tn with weights q^1..q^n, each mapped to the crisp value `body`,
/// and the disjoint singletons A_i = {t_i}.
struct TailFamily {
  FuzzyMapping mapping;
  std::vector<MeasurableSet> sets;
  double ratio;
  double radius;  // max vertex norm of the body

  const FiniteMeasureSpace& space() const noexcept { return mapping.space(); }
  /// Bound on the Hausdorff distance between the m-th partial sum and any
  /// later one: q^(m+1) / (1 - q) * radius.
  double tail_bound(std::size_t m) const;
};

TailFamily geometric_tail_family(const ConvexBody& body, double ratio, std::size_t count);

}  // namespace fuzzint
