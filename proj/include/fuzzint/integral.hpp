#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzint/measure_space.hpp"

namespace fuzzint {

struct Tolerances {
  double support = 1e-9;    // integral identities accumulated over atoms
  double geometry = 1e-12;  // per-atom geometric identities
  double distance = 1e-9;   // membership / nesting tests
};

/// Sum over atoms of A of weight * support(level-r body, u).
double scalar_integral(const FuzzyMapping& mapping, const MeasurableSet& a, const Direction& u,
                       double r);

/// Weighted Minkowski sum of the level-r bodies over A. Zero-weight atoms are
/// skipped and the running sum is pruned to extreme points after each step.
/// The empty sum is {0}.
ConvexBody level_integral(const FuzzyMapping& mapping, const MeasurableSet& a, double r);

struct LevelResidual {
  double level = 1.0;
  std::vector<double> residuals;  // one per grid direction
  double max = 0.0;
};

struct IntegralResult {
  MeasurableSet set;
  FuzzyNumber value;
  std::vector<LevelResidual> residual_report;

  double max_residual() const;
};

/// Level grid: stored levels of every atom in A plus 1. Each level body is
/// level_integral(); nesting is re-validated (NESTING_VIOLATION on failure)
/// and the support gap against scalar_integral is recorded per direction.
IntegralResult fuzzy_pettis_integral(const FuzzyMapping& mapping, const MeasurableSet& a,
                                     const DirectionGrid& grid, const Tolerances& tol = {});

struct CheckResult {
  std::string name;
  bool passed = true;
  double residual = 0.0;
  double bound = 0.0;
  std::string note;
};

struct MeasureVerification {
  CheckResult empty_set;
  CheckResult finite_additivity;
  CheckResult tail_convergence;
  CheckResult tail_permutation;
  CheckResult level_structure;

  std::vector<CheckResult> checks() const;
  bool passed() const;
};

/// Measure axioms of A -> integral over A. Failures are reported, not thrown;
/// only a non-disjoint partition is rejected (INVALID_ARGUMENT).
MeasureVerification integral_measure_verify(const FuzzyMapping& mapping,
                                            const std::vector<MeasurableSet>& partition,
                                            const std::optional<TailFamily>& tail,
                                            const DirectionGrid& grid,
                                            const Tolerances& tol = {});

struct AtomLevelCheck {
  std::size_t atom = 0;
  double level = 1.0;
  bool zero_member = false;
  double min_support = 0.0;  // min over the grid of support(G_r(atom), u)
};

struct DecompositionResult {
  FuzzyMapping g;
  Selection f;
  std::vector<AtomLevelCheck> level_checks;
  std::vector<double> reconstruction_residuals;  // per atom

  bool passed(const Tolerances& tol = {}) const;
};

/// Split value(w) = G(w) + indicator(f(w)) with G_r(w) = value(w)_r - f(w).
/// Throws NOT_A_SELECTION if some f(w) is outside the level-1 body.
DecompositionResult decompose(const FuzzyMapping& mapping, const Selection& f,
                              const DirectionGrid& grid, const Tolerances& tol = {});

/// fuzzy_hausdorff between the integral of the mapping and the integral of
/// G plus the indicator of the integral of f.
double integral_additivity_check(const FuzzyMapping& mapping, const DecompositionResult& split,
                                 const MeasurableSet& a, const DirectionGrid& grid,
                                 const Tolerances& tol = {});

FuzzyMapping add_mappings(const FuzzyMapping& f, const FuzzyMapping& g);
FuzzyMapping scale_mapping(const FuzzyMapping& f, double lambda);

struct LinearityResiduals {
  double additive = 0.0;     // integral(F + G) vs integral(F) + integral(G)
  double homogeneous = 0.0;  // integral(lambda F) vs lambda integral(F)
  bool zero_exact = true;    // lambda = 0: both sides are exactly the indicator of {0}
};

LinearityResiduals scalar_linearity_check(const FuzzyMapping& f, const FuzzyMapping& g,
                                          double lambda, const MeasurableSet& a,
                                          const DirectionGrid& grid, const Tolerances& tol = {});

/// scalar_linearity_check for several lambdas, sharing the lambda-free integrals.
std::vector<LinearityResiduals> scalar_linearity_sweep(const FuzzyMapping& f, const FuzzyMapping& g,
                                                      const std::vector<double>& lambdas,
                                                      const MeasurableSet& a, const DirectionGrid& grid,
                                                      const Tolerances& tol = {});

/// conv of the level-r bodies over positive-weight atoms of E. On an atomic
/// space removing a null set removes exactly zero-weight atoms, so this is
/// the intersection over null N of conv(values on E \ N). NULL_SET if mu(E) = 0.
ConvexBody core(const FuzzyMapping& mapping, const MeasurableSet& e, double r);

/// G_r(w) ⊆ value_r(w) for every atom and every merged level.
bool dominates(const FuzzyMapping& g, const FuzzyMapping& gamma, double tol = kDefaultTolerance);

/// Nonempty subsets of positive measure (requires at most 20 atoms).
std::vector<MeasurableSet> positive_sets(const FiniteMeasureSpace& space);

struct CoreRow {
  MeasurableSet set;
  double level = 1.0;
  bool nonempty = false;
  bool inside_gamma_core = false;
  std::size_t vertex_count = 0;
};

struct CoreReport {
  std::vector<CoreRow> rows;
  std::size_t skipped_null_sets = 0;
  std::string note;

  bool all_pass() const;
};

/// For every E of positive measure and every r, core(G, E, r) is nonempty and
/// lies in core(gamma, E, r). Requires dominates(g, gamma).
CoreReport core_nonempty_check(const FuzzyMapping& gamma, const FuzzyMapping& g,
                               const std::vector<MeasurableSet>& sets,
                               const std::vector<double>& levels,
                               double tol = kDefaultTolerance);

}  // namespace fuzzint
