#include "fuzzint/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "fuzzint/errors.hpp"
#include "fuzzint/oracle.hpp"

namespace fuzzint {
namespace {

constexpr std::size_t kRandomSubsets = 8;
constexpr std::size_t kProbeLevels = 20;
constexpr std::size_t kMaxExhaustiveAtoms = 10;
constexpr std::size_t kSampledCoreSets = 128;
constexpr std::size_t kMembershipProbes = 20;
constexpr std::size_t kSupMinProbes = 6;
constexpr double kShrinkFactor = 0.5;
// Sup-min grids in d = 3 use a step this many times the planar default.
constexpr double kSolidStepFactor = 5.0;
constexpr double kLambdas[] = {0.0, 1.0, 2.5};

VerifyRow row(std::string id, double residual, double bound, std::string description,
              bool extra_ok = true) {
  VerifyRow r;
  r.id = std::move(id);
  r.residual = residual;
  r.bound = bound;
  r.description = std::move(description);
  r.status = residual <= bound && extra_ok ? RowStatus::Pass : RowStatus::Fail;
  return r;
}

VerifyRow status_row(std::string id, RowStatus status, std::string description) {
  VerifyRow r;
  r.id = std::move(id);
  r.status = status;
  r.description = std::move(description);
  return r;
}

VerifyRow from_check(std::string id, const CheckResult& c) {
  std::string text = c.name;
  if (!c.note.empty()) text += " (" + c.note + ")";
  VerifyRow r = row(std::move(id), c.residual, c.bound, std::move(text), c.passed);
  return r;
}

std::vector<double> all_levels(const FuzzyMapping& m) {
  std::set<double> levels{1.0};
  for (const auto& v : m.values()) levels.insert(v.levels().begin(), v.levels().end());
  return {levels.begin(), levels.end()};
}

// Largest amount by which the support of `inner` exceeds that of `outer`.
double support_excess(const ConvexBody& inner, const ConvexBody& outer, const DirectionGrid& grid) {
  double worst = 0.0;
  for (const Direction& u : grid) worst = std::max(worst, support(inner, u) - support(outer, u));
  return worst;
}

std::vector<MeasurableSet> probe_sets(const FiniteMeasureSpace& space, std::mt19937_64& rng) {
  std::vector<MeasurableSet> sets{MeasurableSet::all(space)};
  for (std::size_t i = 0; i < space.size(); ++i) sets.emplace_back(std::vector<std::size_t>{i});
  std::bernoulli_distribution take(0.5);
  for (std::size_t k = 0; k < kRandomSubsets; ++k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (take(rng)) idx.push_back(i);
    }
    sets.emplace_back(std::move(idx));
  }
  return sets;
}

std::vector<MeasurableSet> core_sets(const FiniteMeasureSpace& space, std::mt19937_64& rng) {
  if (space.size() <= kMaxExhaustiveAtoms) return positive_sets(space);
  std::vector<MeasurableSet> sets;
  std::bernoulli_distribution take(0.5);
  for (std::size_t k = 0; k < kSampledCoreSets; ++k) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if (take(rng)) idx.push_back(i);
    }
    MeasurableSet e(std::move(idx));
    if (measure_of(space, e) > 0.0) sets.push_back(std::move(e));
  }
  return sets;
}

void representation_rows(const Scenario& sc, const DirectionGrid& grid, std::mt19937_64& rng,
                         std::vector<VerifyRow>& out) {
  double round_trip = 0.0;
  double nesting = 0.0;
  std::uniform_real_distribution<double> level(std::nextafter(0.0, 1.0), 1.0);
  for (const FuzzyNumber& u : sc.mapping.values()) {
    const FuzzyNumber back = FuzzyNumber::from_level_family(u.levels(), u.bodies(), sc.tol.distance);
    round_trip = std::max(round_trip, fuzzy_hausdorff(u, back, sc.tol.geometry));
    for (std::size_t k = 0; k < kProbeLevels; ++k) {
      double r1 = level(rng);
      double r2 = level(rng);
      if (r1 > r2) std::swap(r1, r2);
      nesting = std::max(nesting, support_excess(u.level_cut(r2), u.level_cut(r1), grid));
    }
  }
  out.push_back(row("representation.round-trip", round_trip, sc.tol.geometry,
                    "fuzzy number rebuilt from its level family"));
  out.push_back(row("representation.nesting", nesting, sc.tol.geometry,
                    "higher level cuts lie inside lower ones at probed levels"));
}

void integral_rows(const Scenario& sc, const DirectionGrid& grid, std::mt19937_64& rng,
                   std::vector<VerifyRow>& out) {
  double worst = 0.0;
  for (const MeasurableSet& a : probe_sets(sc.mapping.space(), rng)) {
    worst = std::max(worst, fuzzy_pettis_integral(sc.mapping, a, grid, sc.tol).max_residual());
  }
  out.push_back(row("integral.support-identity", worst, sc.tol.support,
                    "support of each integral level equals the weighted support sum"));
}

void decomposition_rows(const Scenario& sc, const DirectionGrid& grid, const Direction& u,
                        std::vector<VerifyRow>& out) {
  const Selection f = canonical_mapping_selection(sc.mapping, u);
  const DecompositionResult split = decompose(sc.mapping, f, grid, sc.tol);
  double reconstruction = 0.0;
  for (double r : split.reconstruction_residuals) reconstruction = std::max(reconstruction, r);
  double origin_gap = 0.0;
  const Point zero(sc.mapping.dims(), 0.0);
  for (const FuzzyNumber& g : split.g.values()) {
    for (const ConvexBody& b : g.bodies()) origin_gap = std::max(origin_gap, distance(zero, b, sc.tol.distance));
  }
  bool all_zero = true;
  double negative = 0.0;
  for (const AtomLevelCheck& c : split.level_checks) {
    all_zero = all_zero && c.zero_member;
    negative = std::max(negative, -c.min_support);
  }
  out.push_back(row("decomposition.reconstruction", reconstruction, sc.tol.geometry,
                    "value = shifted part + indicator of the selection, per atom"));
  out.push_back(row("decomposition.zero-member", origin_gap, sc.tol.distance,
                    "origin lies in every level of the shifted part", all_zero));
  out.push_back(row("decomposition.support-sign", negative, sc.tol.geometry,
                    "grid supports of the shifted part are nonnegative"));
  const double split_gap = integral_additivity_check(sc.mapping, split, MeasurableSet::all(sc.mapping.space()),
                                                     grid, sc.tol);
  out.push_back(row("decomposition.integral-split", split_gap, sc.tol.support,
                    "integral splits into shifted part plus selection integral"));
}

void measure_rows(const Scenario& sc, const DirectionGrid& grid, const VerifyOptions& opt,
                  std::mt19937_64& rng, std::vector<VerifyRow>& out) {
  std::uniform_int_distribution<std::size_t> which(0, 2);
  std::vector<std::vector<std::size_t>> idx(3);
  for (std::size_t i = 0; i < sc.mapping.size(); ++i) idx[which(rng)].push_back(i);
  std::vector<MeasurableSet> partition;
  for (auto& v : idx) partition.emplace_back(std::move(v));

  std::optional<TailFamily> tail;
  if (opt.tail_ratio) {
    tail = geometric_tail_family(sc.mapping.value(0).level_cut(1.0), *opt.tail_ratio, opt.tail_count);
  }
  const MeasureVerification mv = integral_measure_verify(sc.mapping, partition, tail, grid, sc.tol);
  out.push_back(from_check("measure.empty-set", mv.empty_set));
  out.push_back(from_check("measure.finite-additivity", mv.finite_additivity));
  out.push_back(from_check("measure.level-structure", mv.level_structure));
  if (tail) {
    VerifyRow conv = from_check("measure.countable-additivity", mv.tail_convergence);
    conv.description += "; excess over q^(m+1)/(1-q)*R";
    out.push_back(std::move(conv));
    out.push_back(from_check("measure.rearrangement", mv.tail_permutation));
  } else {
    out.push_back(status_row("measure.countable-additivity", RowStatus::Skipped,
                             "geometric tail family not requested (--tail q n)"));
    out.push_back(status_row("measure.rearrangement", RowStatus::Skipped,
                             "geometric tail family not requested (--tail q n)"));
  }
}

void linearity_rows(const Scenario& sc, const DirectionGrid& grid, const FuzzyMapping& g,
                    std::vector<VerifyRow>& out) {
  double additive = 0.0;
  double homogeneous = 0.0;
  bool zero_exact = true;
  const MeasurableSet all = MeasurableSet::all(sc.mapping.space());
  const std::vector<double> lambdas(std::begin(kLambdas), std::end(kLambdas));
  const auto sweep = scalar_linearity_sweep(sc.mapping, g, lambdas, all, grid, sc.tol);
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    additive = std::max(additive, sweep[k].additive);
    homogeneous = std::max(homogeneous, sweep[k].homogeneous);
    if (lambdas[k] == 0.0) zero_exact = sweep[k].zero_exact;
  }
  out.push_back(row("linearity.additive", additive, sc.tol.support,
                    "integral of a sum equals the sum of integrals"));
  out.push_back(row("linearity.homogeneous", homogeneous, sc.tol.support,
                    "integral of a scaled mapping for lambda in {0, 1, 2.5}"));
  out.push_back(row("linearity.zero-scale", 0.0, 0.0,
                    "lambda = 0 gives exactly the indicator of the origin", zero_exact));
}

void core_rows(const Scenario& sc, const FuzzyMapping& g, std::mt19937_64& rng,
               std::vector<VerifyRow>& out) {
  const std::vector<MeasurableSet> sets = core_sets(sc.mapping.space(), rng);
  if (sets.empty()) {
    out.push_back(status_row("core.nonempty", RowStatus::Skipped, "no set of positive measure"));
    return;
  }
  const CoreReport report = core_nonempty_check(sc.mapping, g, sets, all_levels(sc.mapping), sc.tol.distance);
  std::size_t failures = 0;
  for (const CoreRow& r : report.rows) {
    if (!r.nonempty || !r.inside_gamma_core) ++failures;
  }
  out.push_back(row("core.nonempty", static_cast<double>(failures), 0.0,
                    "dominated core nonempty and inside the core, " + std::to_string(report.rows.size()) +
                        " (set, level) pairs; residual counts failures"));
}

// Smallest kernel grade over x + h * {-1, 0, 1}^d.
double neighbourhood_min_grade(const FuzzyNumber& w, const Point& x, double h, double tol) {
  const std::size_t d = x.size();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < d; ++k) combos *= 3;
  double lowest = 1.0;
  for (std::size_t c = 0; c < combos; ++c) {
    Point y = x;
    std::size_t code = c;
    for (std::size_t k = 0; k < d; ++k) {
      y[k] += h * (static_cast<double>(code % 3) - 1.0);
      code /= 3;
    }
    lowest = std::min(lowest, membership(w, y, tol).value());
  }
  return lowest;
}

Point random_in_box(std::mt19937_64& rng, const ConvexBody& b, double margin) {
  const std::size_t d = b.dims();
  Point lo(d, std::numeric_limits<double>::infinity());
  Point hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], b.vertex(i)[k]);
      hi[k] = std::max(hi[k], b.vertex(i)[k]);
    }
  }
  Point x(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::uniform_real_distribution<double> c(lo[k] - margin, hi[k] + margin);
    x[k] = c(rng);
  }
  return x;
}

void oracle_rows(const Scenario& sc, const DirectionGrid& grid, std::mt19937_64& rng,
                 std::vector<VerifyRow>& out) {
  const FuzzyMapping& m = sc.mapping;
  const std::size_t d = m.dims();

  double support_gap = 0.0;
  const FuzzyNumber whole = fuzzy_pettis_integral(m, MeasurableSet::all(m.space()), grid, sc.tol).value;
  std::vector<const ConvexBody*> bodies;
  for (const auto& v : m.values()) {
    for (const auto& b : v.bodies()) bodies.push_back(&b);
  }
  for (const auto& b : whole.bodies()) bodies.push_back(&b);
  for (const ConvexBody* b : bodies) {
    for (const Direction& u : grid) {
      support_gap = std::max(support_gap, std::abs(oracle::oracle_support(*b, u) - support(*b, u)));
    }
  }
  out.push_back(row("oracle.support", support_gap, 0.0,
                    "vertex-scan support matches the kernel exactly"));

  if (d > oracle::kMaxCaratheodoryDims) {
    out.push_back(status_row("oracle.membership", RowStatus::Skipped, "hull oracle limited to d <= 3"));
  } else {
    std::size_t mismatches = 0;
    std::size_t probes = 0;
    for (const ConvexBody* raw : bodies) {
      const ConvexBody b = prune(*raw);
      if (b.size() > oracle::kMaxCaratheodoryVertices) continue;
      for (std::size_t s = 0; s < kMembershipProbes; ++s) {
        const Point x = random_in_box(rng, b, 0.5);
        const double exact = oracle::oracle_hull_distance(x, b.vertices());
        // Points inside the tolerance band are classified by the band itself.
        if (std::abs(exact - sc.tol.distance) < 0.1 * sc.tol.distance) continue;
        ++probes;
        if (oracle::oracle_hull_membership(x, b.vertices(), sc.tol.distance) !=
            contains(b, x, sc.tol.distance)) {
          ++mismatches;
        }
      }
    }
    out.push_back(row("oracle.membership", static_cast<double>(mismatches), 0.0,
                      "subset-enumeration hull test vs kernel contains, " + std::to_string(probes) +
                          " probes; residual counts mismatches"));
  }

  if (m.size() < 2) {
    out.push_back(status_row("oracle.supmin", RowStatus::Skipped, "needs two atoms"));
    return;
  }
  const FuzzyNumber& u = m.value(0);
  const FuzzyNumber& v = m.value(1);
  const FuzzyNumber w = add(u, v);
  // Dyadic step: vertices with short binary fractions (integers, halves, ...)
  // then lie on the sample lattice.
  const oracle::SampleGrid coarse = oracle::SampleGrid::covering({&u.bodies().front(), &v.bodies().front()});
  const double base_step = d >= 3 ? coarse.step() * kSolidStepFactor : coarse.step();
  const double h = std::ldexp(1.0, static_cast<int>(std::floor(std::log2(base_step))));
  const oracle::SampleGrid sample =
      oracle::SampleGrid::covering({&u.bodies().front(), &v.bodies().front()}, h);
  double worst = 0.0;
  for (std::size_t s = 0; s < kSupMinProbes; ++s) {
    // Targets sit on the lattice of grid sums; off it, a lower-dimensional
    // level body can be missed by every grid decomposition.
    Point x = random_in_box(rng, w.bodies().front(), 0.25);
    for (std::size_t k = 0; k < d; ++k) {
      const double base = 2.0 * sample.lower()[k];
      x[k] = base + std::round((x[k] - base) / h) * h;
    }
    const double grade = oracle::oracle_supmin_add(u, v, x, sample, sc.tol.distance).value();
    const double kernel = membership(w, x, sc.tol.distance).value();
    const double floor = neighbourhood_min_grade(w, x, h, sc.tol.distance);
    worst = std::max({worst, grade - kernel, floor - grade});
  }
  out.push_back(row("oracle.supmin", worst, 0.0,
                    "sup-min grade of the first two atoms at lattice targets, within one grid step of the level-wise sum"));
}

void infinite_dimensional_rows(std::vector<VerifyRow>& out) {
  const char* ids[] = {"operator.weak-compactness", "range.wcg-determination", "dual.angelic",
                       "space.c0-free"};
  for (const char* id : ids) out.push_back(status_row(id, RowStatus::Trivial, "trivially satisfied in R^d"));
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

std::string_view to_string(RowStatus status) {
  switch (status) {
    case RowStatus::Pass: return "PASS";
    case RowStatus::Fail: return "FAIL";
    case RowStatus::Trivial: return "TRIVIAL";
    case RowStatus::Skipped: return "SKIPPED";
  }
  return "?";
}

bool VerifyReport::all_pass() const {
  return std::none_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.status == RowStatus::Fail; });
}

std::string VerifyReport::format() const {
  std::string out = header + "\n";
  char line[512];
  std::snprintf(line, sizeof line, "%-30s %-8s %-10s %-10s %s\n", "check", "status", "residual", "bound",
                "description");
  out += line;
  for (const VerifyRow& r : rows) {
    const bool numeric = r.status == RowStatus::Pass || r.status == RowStatus::Fail;
    std::snprintf(line, sizeof line, "%-30s %-8s %-10s %-10s %s\n", r.id.c_str(),
                  std::string(to_string(r.status)).c_str(), numeric ? fixed(r.residual).c_str() : "-",
                  numeric ? fixed(r.bound).c_str() : "-", r.description.c_str());
    out += line;
  }
  out += all_pass() ? "result: PASS\n" : "result: FAIL\n";
  return out;
}

FuzzyMapping shrink_toward_selection(const FuzzyMapping& gamma, const Direction& u, double factor) {
  if (!(factor >= 0.0 && factor <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "shrink factor must lie in [0, 1]");
  }
  const Selection f = canonical_mapping_selection(gamma, u);
  std::vector<FuzzyNumber> values;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Point back = f.at(i);
    for (double& c : back) c = -c;
    const FuzzyNumber centred = translate_fuzzy(gamma.value(i), f.at(i));
    values.push_back(translate_fuzzy(scale_fuzzy(centred, factor), back));
  }
  return FuzzyMapping(gamma.space(), std::move(values));
}

VerifyReport run_verify(const Scenario& scenario, const VerifyOptions& options) {
  const DirectionGrid grid = scenario.grid();
  const Direction u = options.direction.value_or(grid[0]);
  if (u.dims() != scenario.mapping.dims()) {
    throw Error(ErrorCode::DimensionMismatch, "direction has " + std::to_string(u.dims()) +
                                                  " coordinates, scenario has dims " +
                                                  std::to_string(scenario.mapping.dims()));
  }
  std::mt19937_64 rng(options.seed);

  VerifyReport report;
  report.header = "dims " + std::to_string(scenario.mapping.dims()) + ", atoms " +
                  std::to_string(scenario.mapping.size()) + ", directions " +
                  std::to_string(grid.size()) + ", seed " + std::to_string(options.seed);
  auto& rows = report.rows;
  representation_rows(scenario, grid, rng, rows);
  integral_rows(scenario, grid, rng, rows);
  decomposition_rows(scenario, grid, u, rows);
  measure_rows(scenario, grid, options, rng, rows);
  const FuzzyMapping dominated = shrink_toward_selection(scenario.mapping, u, kShrinkFactor);
  linearity_rows(scenario, grid, dominated, rows);
  core_rows(scenario, dominated, rng, rows);
  if (options.with_oracle) {
    oracle_rows(scenario, grid, rng, rows);
  } else {
    for (const char* id : {"oracle.support", "oracle.membership", "oracle.supmin"}) {
      rows.push_back(status_row(id, RowStatus::Skipped, "oracle cross-checks not requested (--with-oracle)"));
    }
  }
  infinite_dimensional_rows(rows);
  return report;
}

}  // namespace fuzzint
