#include "fuzzint/integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

#include "fuzzint/errors.hpp"

namespace fuzzint {
namespace {

void require_same_space(const FuzzyMapping& f, const FuzzyMapping& g, const char* what) {
  if (f.space().ids() != g.space().ids() || f.space().weights() != g.space().weights()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": mappings live on different spaces");
  }
  if (f.dims() != g.dims()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": mappings differ in dimension");
  }
}

std::vector<double> integral_levels(const FuzzyMapping& mapping, const MeasurableSet& a) {
  std::set<double> levels{1.0};
  for (std::size_t i : a.indices()) {
    const auto& l = mapping.value(i).levels();
    levels.insert(l.begin(), l.end());
  }
  return {levels.begin(), levels.end()};
}

bool is_exact_null_element(const FuzzyNumber& u) {
  if (u.level_count() != 1 || u.bodies()[0].size() != 1) return false;
  const auto c = u.bodies()[0].coords();
  return std::all_of(c.begin(), c.end(), [](double x) { return x == 0.0; });
}

CheckResult make_check(std::string name, double residual, double bound, std::string note = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.residual = residual;
  c.bound = bound;
  c.passed = residual <= bound;
  c.note = std::move(note);
  return c;
}

}  // namespace

double scalar_integral(const FuzzyMapping& mapping, const MeasurableSet& a, const Direction& u,
                       double r) {
  a.validate(mapping.space());
  const LevelView level = mapping_level(mapping, r);
  double total = 0.0;
  for (std::size_t i : a.indices()) {
    const double w = mapping.space().weight(i);
    if (w == 0.0) continue;
    total += w * support(level[i], u);
  }
  return total;
}

ConvexBody level_integral(const FuzzyMapping& mapping, const MeasurableSet& a, double r) {
  a.validate(mapping.space());
  const LevelView level = mapping_level(mapping, r);
  std::optional<ConvexBody> acc;
  for (std::size_t i : a.indices()) {
    const double w = mapping.space().weight(i);
    if (w == 0.0) continue;
    ConvexBody term = prune(scale(level[i], w));
    acc = acc ? minkowski_add(*acc, term, true) : std::move(term);
  }
  return acc ? *acc : ConvexBody::origin(mapping.dims());
}

double IntegralResult::max_residual() const {
  double m = 0.0;
  for (const auto& l : residual_report) m = std::max(m, l.max);
  return m;
}

IntegralResult fuzzy_pettis_integral(const FuzzyMapping& mapping, const MeasurableSet& a,
                                     const DirectionGrid& grid, const Tolerances& tol) {
  a.validate(mapping.space());
  if (grid.dims() != mapping.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "direction grid dimension differs from mapping");
  }
  std::vector<double> levels = integral_levels(mapping, a);
  std::vector<ConvexBody> bodies;
  std::vector<LevelResidual> report;
  bodies.reserve(levels.size());
  for (double r : levels) {
    bodies.push_back(level_integral(mapping, a, r));
    LevelResidual row;
    row.level = r;
    for (const Direction& u : grid) {
      const double gap = std::abs(support(bodies.back(), u) - scalar_integral(mapping, a, u, r));
      row.residuals.push_back(gap);
      row.max = std::max(row.max, gap);
    }
    report.push_back(std::move(row));
  }
  FuzzyNumber value = FuzzyNumber::from_level_family(std::move(levels), std::move(bodies),
                                                     tol.distance);
  return IntegralResult{a, std::move(value), std::move(report)};
}

std::vector<CheckResult> MeasureVerification::checks() const {
  return {empty_set, finite_additivity, tail_convergence, tail_permutation, level_structure};
}

bool MeasureVerification::passed() const {
  const auto all = checks();
  return std::all_of(all.begin(), all.end(), [](const CheckResult& c) { return c.passed; });
}

MeasureVerification integral_measure_verify(const FuzzyMapping& mapping,
                                            const std::vector<MeasurableSet>& partition,
                                            const std::optional<TailFamily>& tail,
                                            const DirectionGrid& grid, const Tolerances& tol) {
  for (std::size_t i = 0; i < partition.size(); ++i) {
    partition[i].validate(mapping.space());
    for (std::size_t j = i + 1; j < partition.size(); ++j) {
      if (!partition[i].disjoint_from(partition[j])) {
        throw Error(ErrorCode::InvalidArgument, "partition sets " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " overlap");
      }
    }
  }

  MeasureVerification out;
  const std::size_t d = mapping.dims();

  const FuzzyNumber at_empty = fuzzy_pettis_integral(mapping, MeasurableSet{}, grid, tol).value;
  const bool exact_theta = is_exact_null_element(at_empty);
  out.empty_set = make_check("empty set maps to the null element",
                             fuzzy_hausdorff(at_empty, FuzzyNumber::null_element(d), tol.geometry),
                             0.0);
  out.empty_set.passed = out.empty_set.passed && exact_theta;

  // Finite additivity, and the level-set form of the same statement.
  MeasurableSet united;
  std::vector<FuzzyNumber> parts;
  for (const auto& p : partition) {
    united = united.united(p);
    parts.push_back(fuzzy_pettis_integral(mapping, p, grid, tol).value);
  }
  const FuzzyNumber whole = fuzzy_pettis_integral(mapping, united, grid, tol).value;
  FuzzyNumber summed = FuzzyNumber::null_element(d);
  for (const auto& p : parts) summed = add(summed, p, true);
  out.finite_additivity = make_check("finite additivity over the partition",
                                     fuzzy_hausdorff(whole, summed, tol.geometry), tol.support);

  double level_residual = 0.0;
  bool nested = true;
  bool stable = true;
  std::vector<const FuzzyNumber*> family{&at_empty, &whole};
  for (const auto& p : parts) family.push_back(&p);
  for (double r : whole.levels()) {
    // (i) each level is itself additive, with {0} at the empty set.
    ConvexBody level_sum = ConvexBody::origin(d);
    for (const auto& p : parts) level_sum = minkowski_add(level_sum, p.level_cut(r), true);
    level_residual = std::max(level_residual, hausdorff(whole.level_cut(r), level_sum, tol.geometry));
    level_residual = std::max(level_residual,
                              hausdorff(at_empty.level_cut(r), ConvexBody::origin(d), tol.geometry));
  }
  for (const FuzzyNumber* m : family) {
    const auto& lv = m->levels();
    for (std::size_t i = 0; i < lv.size(); ++i) {
      // (ii) nesting across consecutive stored levels.
      if (i > 0 && !subset_of(m->level_cut(lv[i]), m->level_cut(lv[i - 1]), tol.distance)) {
        nested = false;
      }
      // (iii) cuts along r_k increasing to r_i settle on the cut at r_i.
      const double below = i == 0 ? 0.0 : lv[i - 1];
      for (int k = 1; k <= 30; ++k) {
        const double rk = lv[i] - (lv[i] - below) * std::ldexp(1.0, -k);
        if (rk <= below) continue;
        if (&m->level_cut(rk) != &m->level_cut(lv[i])) stable = false;
      }
    }
  }
  out.level_structure = make_check("level cuts: additive, nested, left-continuous",
                                   level_residual, tol.support);
  out.level_structure.passed = out.level_structure.passed && nested && stable;
  if (!nested) out.level_structure.note = "nesting failed";
  if (!stable) out.level_structure.note += " step stability failed";

  if (tail) {
    const FuzzyMapping& tm = tail->mapping;
    const std::size_t n = tail->sets.size();
    std::vector<FuzzyNumber> partial;
    FuzzyNumber running = FuzzyNumber::null_element(tm.dims());
    for (std::size_t i = 0; i < n; ++i) {
      running = add(running, fuzzy_pettis_integral(tm, tail->sets[i], grid, tol).value, true);
      partial.push_back(running);
    }
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        // partial[a] holds the first a + 1 terms.
        const double gap = fuzzy_hausdorff(partial[a], partial[b], tol.geometry);
        excess = std::max(excess, gap - tail->tail_bound(a + 1));
      }
    }
    MeasurableSet all_tail;
    for (const auto& s : tail->sets) all_tail = all_tail.united(s);
    const FuzzyNumber direct = fuzzy_pettis_integral(tm, all_tail, grid, tol).value;
    const double union_gap = fuzzy_hausdorff(direct, partial.back(), tol.geometry);
    out.tail_convergence = make_check("partial sums within the geometric tail bound",
                                      n > 1 ? std::max(excess, 0.0) : 0.0, 0.0);
    if (union_gap > tol.support) {
      out.tail_convergence.passed = false;
      out.tail_convergence.note = "truncated union differs from the partial sum";
    }
    out.tail_convergence.residual = std::max(out.tail_convergence.residual, union_gap);

    // Reverse order stands in for an arbitrary rearrangement of the series.
    FuzzyNumber reversed = FuzzyNumber::null_element(tm.dims());
    for (std::size_t i = n; i-- > 0;) {
      reversed = add(reversed, fuzzy_pettis_integral(tm, tail->sets[i], grid, tol).value, true);
    }
    out.tail_permutation = make_check("rearranged partial sum",
                                      fuzzy_hausdorff(reversed, partial.back(), tol.geometry),
                                      tol.support);
  } else {
    out.tail_convergence = make_check("partial sums within the geometric tail bound", 0.0, 0.0,
                                      "no tail family supplied");
    out.tail_permutation = make_check("rearranged partial sum", 0.0, 0.0,
                                      "no tail family supplied");
  }
  return out;
}

bool DecompositionResult::passed(const Tolerances& tol) const {
  for (const auto& c : level_checks) {
    if (!c.zero_member || c.min_support < -tol.geometry) return false;
  }
  for (double r : reconstruction_residuals) {
    if (r > tol.geometry) return false;
  }
  return true;
}

DecompositionResult decompose(const FuzzyMapping& mapping, const Selection& f,
                              const DirectionGrid& grid, const Tolerances& tol) {
  if (f.size() != mapping.size()) {
    throw Error(ErrorCode::InvalidArgument, "selection size differs from the number of atoms");
  }
  const Point zero(mapping.dims(), 0.0);
  std::vector<FuzzyNumber> g_values;
  std::vector<AtomLevelCheck> checks;
  std::vector<double> residuals;
  for (std::size_t i = 0; i < mapping.size(); ++i) {
    const FuzzyNumber& value = mapping.value(i);
    if (f.at(i).size() != mapping.dims()) {
      throw Error(ErrorCode::DimensionMismatch, "selection point has wrong dimension");
    }
    if (!contains(value.level_cut(1.0), f.at(i), tol.distance)) {
      throw Error(ErrorCode::NotASelection,
                  "f(" + mapping.space().id(i) + ") is outside the level-1 body");
    }
    FuzzyNumber g = translate_fuzzy(value, f.at(i));
    for (std::size_t k = 0; k < g.level_count(); ++k) {
      AtomLevelCheck c;
      c.atom = i;
      c.level = g.levels()[k];
      c.zero_member = contains(g.bodies()[k], zero, tol.distance);
      c.min_support = std::numeric_limits<double>::infinity();
      for (const Direction& u : grid) c.min_support = std::min(c.min_support, support(g.bodies()[k], u));
      checks.push_back(c);
    }
    residuals.push_back(fuzzy_hausdorff(add(g, fuzzy_from_point(f.at(i))), value, tol.geometry));
    g_values.push_back(std::move(g));
  }
  return DecompositionResult{FuzzyMapping(mapping.space(), std::move(g_values)), f,
                             std::move(checks), std::move(residuals)};
}

double integral_additivity_check(const FuzzyMapping& mapping, const DecompositionResult& split,
                                 const MeasurableSet& a, const DirectionGrid& grid,
                                 const Tolerances& tol) {
  a.validate(mapping.space());
  const FuzzyNumber lhs = fuzzy_pettis_integral(mapping, a, grid, tol).value;
  const FuzzyNumber g_part = fuzzy_pettis_integral(split.g, a, grid, tol).value;
  Point f_integral(mapping.dims(), 0.0);
  for (std::size_t i : a.indices()) {
    const double w = mapping.space().weight(i);
    for (std::size_t k = 0; k < f_integral.size(); ++k) f_integral[k] += w * split.f.at(i)[k];
  }
  return fuzzy_hausdorff(lhs, add(g_part, fuzzy_from_point(std::move(f_integral)), true),
                         tol.geometry);
}

FuzzyMapping add_mappings(const FuzzyMapping& f, const FuzzyMapping& g) {
  require_same_space(f, g, "add_mappings");
  std::vector<FuzzyNumber> values;
  for (std::size_t i = 0; i < f.size(); ++i) values.push_back(add(f.value(i), g.value(i), true));
  return FuzzyMapping(f.space(), std::move(values));
}

FuzzyMapping scale_mapping(const FuzzyMapping& f, double lambda) {
  std::vector<FuzzyNumber> values;
  for (const auto& v : f.values()) values.push_back(scale_fuzzy(v, lambda));
  return FuzzyMapping(f.space(), std::move(values));
}

std::vector<LinearityResiduals> scalar_linearity_sweep(const FuzzyMapping& f, const FuzzyMapping& g,
                                                      const std::vector<double>& lambdas,
                                                      const MeasurableSet& a, const DirectionGrid& grid,
                                                      const Tolerances& tol) {
  require_same_space(f, g, "scalar_linearity_check");
  for (double lambda : lambdas) {
    if (!(lambda >= 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be nonnegative");
  }
  const FuzzyNumber int_f = fuzzy_pettis_integral(f, a, grid, tol).value;
  const FuzzyNumber int_g = fuzzy_pettis_integral(g, a, grid, tol).value;
  const FuzzyNumber int_sum = fuzzy_pettis_integral(add_mappings(f, g), a, grid, tol).value;
  const double additive = fuzzy_hausdorff(int_sum, add(int_f, int_g, true), tol.geometry);

  std::vector<LinearityResiduals> out;
  for (double lambda : lambdas) {
    LinearityResiduals r;
    r.additive = additive;
    const FuzzyNumber int_scaled = fuzzy_pettis_integral(scale_mapping(f, lambda), a, grid, tol).value;
    const FuzzyNumber scaled_int = scale_fuzzy(int_f, lambda);
    r.homogeneous = fuzzy_hausdorff(int_scaled, scaled_int, tol.geometry);
    if (lambda == 0.0) {
      r.zero_exact = is_exact_null_element(int_scaled) && is_exact_null_element(scaled_int);
    }
    out.push_back(r);
  }
  return out;
}

LinearityResiduals scalar_linearity_check(const FuzzyMapping& f, const FuzzyMapping& g,
                                          double lambda, const MeasurableSet& a,
                                          const DirectionGrid& grid, const Tolerances& tol) {
  return scalar_linearity_sweep(f, g, {lambda}, a, grid, tol).front();
}

ConvexBody core(const FuzzyMapping& mapping, const MeasurableSet& e, double r) {
  e.validate(mapping.space());
  const LevelView level = mapping_level(mapping, r);
  std::optional<ConvexBody> acc;
  for (std::size_t i : e.indices()) {
    if (mapping.space().weight(i) == 0.0) continue;
    acc = acc ? hull_union(*acc, level[i]) : level[i];
  }
  if (!acc) throw Error(ErrorCode::NullSet, "set has measure zero; core is undefined");
  return *acc;
}

bool dominates(const FuzzyMapping& g, const FuzzyMapping& gamma, double tol) {
  require_same_space(g, gamma, "dominates");
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (double r : merged_levels(g.value(i).levels(), gamma.value(i).levels())) {
      if (!subset_of(g.value(i).level_cut(r), gamma.value(i).level_cut(r), tol)) return false;
    }
  }
  return true;
}

std::vector<MeasurableSet> positive_sets(const FiniteMeasureSpace& space) {
  if (space.size() > 20) {
    throw Error(ErrorCode::InstanceTooLarge, "subset enumeration limited to 20 atoms");
  }
  std::vector<MeasurableSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << space.size()); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (mask >> i & 1U) idx.push_back(i);
    }
    MeasurableSet s(std::move(idx));
    if (measure_of(space, s) > 0.0) out.push_back(std::move(s));
  }
  return out;
}

bool CoreReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CoreRow& r) { return r.nonempty && r.inside_gamma_core; });
}

CoreReport core_nonempty_check(const FuzzyMapping& gamma, const FuzzyMapping& g,
                               const std::vector<MeasurableSet>& sets,
                               const std::vector<double>& levels, double tol) {
  if (!dominates(g, gamma, tol)) {
    throw Error(ErrorCode::InvalidArgument, "core_nonempty_check requires a dominated mapping");
  }
  CoreReport report;
  report.note =
      "weak compactness of the level operators holds trivially in finite dimensions";
  for (const auto& e : sets) {
    if (measure_of(gamma.space(), e) == 0.0) {
      ++report.skipped_null_sets;
      continue;
    }
    for (double r : levels) {
      CoreRow row;
      row.set = e;
      row.level = r;
      const ConvexBody cg = core(g, e, r);
      row.vertex_count = cg.size();
      row.nonempty = cg.size() > 0;
      row.inside_gamma_core = subset_of(cg, core(gamma, e, r), tol);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace fuzzint
