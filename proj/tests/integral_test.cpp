#include <gtest/gtest.h>

#include <random>

#include "fuzzint/errors.hpp"
#include "fuzzint/integral.hpp"
#include "fuzzint/oracle.hpp"
#include "fuzzint/verify.hpp"
#include "support/fixtures.hpp"
#include "support/random_fixtures.hpp"

using namespace fuzzint;
namespace fx = fuzzint::testing;

namespace {

const DirectionGrid& grid_for(std::size_t d) {
  static const DirectionGrid g1 = DirectionGrid::make_default(1);
  static const DirectionGrid g2 = DirectionGrid::make_default(2);
  static const DirectionGrid g3 = DirectionGrid::make_default(3);
  return d == 1 ? g1 : d == 2 ? g2 : g3;
}

// Level body by enumerating every weighted vertex combination.
ConvexBody oracle_level(const FuzzyMapping& m, const MeasurableSet& a, double r) {
  std::vector<const ConvexBody*> bodies;
  std::vector<double> weights;
  for (std::size_t i : a.indices()) {
    if (m.space().weight(i) == 0.0) continue;
    bodies.push_back(&m.value(i).level_cut(r));
    weights.push_back(m.space().weight(i));
  }
  if (bodies.empty()) return ConvexBody::origin(m.dims());
  return ConvexBody(m.dims(), oracle::weighted_sum_points(bodies, weights));
}

double vertex_product(const FuzzyMapping& m, const MeasurableSet& a) {
  double total = 1.0;
  for (std::size_t i : a.indices()) {
    if (m.space().weight(i) > 0.0) total *= static_cast<double>(m.value(i).bodies().front().size());
  }
  return total;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ScalarIntegral, Examples) {
  const FuzzyMapping squares(FiniteMeasureSpace({"a", "b"}, {1.0, 2.0}),
                             {FuzzyNumber::from_level_family({1.0}, {fx::square(1.0)}),
                              FuzzyNumber::from_level_family({1.0}, {fx::square(2.0)})});
  const Direction e1({1.0, 0.0});
  EXPECT_EQ(scalar_integral(squares, MeasurableSet{}, e1, 1.0), 0.0);
  EXPECT_EQ(scalar_integral(squares, MeasurableSet::all(squares.space()), e1, 1.0), 5.0);
  const FuzzyMapping constant(FiniteMeasureSpace({"a", "b"}, {0.5, 1.25}),
                              {fuzzy_from_point({1.0, 2.0}), fuzzy_from_point({1.0, 2.0})});
  const Direction u = Direction::normalized({1.0, 1.0});
  EXPECT_NEAR(scalar_integral(constant, MeasurableSet::all(constant.space()), u, 0.5),
              1.75 * 3.0 / std::sqrt(2.0), 1e-15);
}

TEST(LevelIntegral, Examples) {
  const FuzzyMapping squares(FiniteMeasureSpace({"a", "b"}, {1.0, 2.0}),
                             {FuzzyNumber::from_level_family({1.0}, {fx::square(1.0)}),
                              FuzzyNumber::from_level_family({1.0}, {fx::square(2.0)})});
  EXPECT_EQ(level_integral(squares, MeasurableSet{}, 1.0).vertices(), (std::vector<Point>{{0.0, 0.0}}));
  EXPECT_LE(hausdorff(level_integral(squares, MeasurableSet({0}), 1.0), fx::square(1.0)), 1e-12);
  EXPECT_LE(hausdorff(level_integral(squares, MeasurableSet::all(squares.space()), 1.0), fx::square(5.0)),
            1e-12);
}

TEST(FuzzyPettisIntegral, ThetaMapping) {
  const FuzzyMapping theta = fx::theta_mapping();
  for (const auto& a : {MeasurableSet{}, MeasurableSet({0}), MeasurableSet({0, 1})}) {
    const IntegralResult r = fuzzy_pettis_integral(theta, a, grid_for(2));
    EXPECT_EQ(r.value.levels(), std::vector<double>{1.0});
    EXPECT_EQ(r.value.bodies()[0].vertices(), (std::vector<Point>{{0.0, 0.0}}));
    EXPECT_EQ(r.max_residual(), 0.0);
  }
}

TEST(FuzzyPettisIntegral, PointValuedIsVectorIntegral) {
  const FuzzyMapping m = fx::point_mapping();
  const IntegralResult r = fuzzy_pettis_integral(m, MeasurableSet::all(m.space()), grid_for(2));
  ASSERT_EQ(r.value.levels(), std::vector<double>{1.0});
  const Point top = r.value.bodies()[0].vertex_point(0);
  EXPECT_EQ(r.value.bodies()[0].size(), 1u);
  EXPECT_NEAR(top[0], 3.0, 1e-12);
  EXPECT_NEAR(top[1], 0.0, 1e-12);
}

TEST(FuzzyPettisIntegral, TwoAtomLevelFamilyMatchesEnumeration) {
  const FuzzyMapping m = fx::two_atom_mapping();
  const MeasurableSet all = MeasurableSet::all(m.space());
  const IntegralResult r = fuzzy_pettis_integral(m, all, grid_for(2));
  EXPECT_EQ(r.value.levels(), (std::vector<double>{0.25, 0.5, 1.0}));
  for (double level : r.value.levels()) {
    EXPECT_LE(hausdorff(r.value.level_cut(level), oracle_level(m, all, level), 1e-12), 1e-12);
  }
  EXPECT_LE(r.max_residual(), 1e-9);
  ASSERT_EQ(r.residual_report.size(), 3u);
  EXPECT_EQ(r.residual_report[0].residuals.size(), grid_for(2).size());
}

TEST(FuzzyPettisIntegral, RejectsGridOfWrongDimension) {
  const FuzzyMapping m = fx::two_atom_mapping();
  EXPECT_EQ(code_of([&] { (void)fuzzy_pettis_integral(m, MeasurableSet({0}), grid_for(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(MeasureVerify, SingleAtomTrivialPartition) {
  const FuzzyMapping m(FiniteMeasureSpace({"a"}, {2.0}),
                       {FuzzyNumber::from_level_family({0.5, 1.0}, {fx::square(2.0), fx::square(1.0)})});
  const MeasureVerification v = integral_measure_verify(m, {MeasurableSet({0})}, std::nullopt, grid_for(2));
  EXPECT_TRUE(v.passed());
  for (const auto& c : v.checks()) EXPECT_EQ(c.residual, 0.0) << c.name;
}

TEST(MeasureVerify, TwoAtomPartitionAndTail) {
  const FuzzyMapping m = fx::two_atom_mapping();
  const TailFamily tail = geometric_tail_family(fx::square(1.0), 0.5, 20);
  const MeasureVerification v =
      integral_measure_verify(m, {MeasurableSet({0}), MeasurableSet({1})}, tail, grid_for(2));
  EXPECT_TRUE(v.passed());
  EXPECT_LE(v.finite_additivity.residual, 1e-9);
  EXPECT_LE(v.tail_permutation.residual, 1e-9);
  EXPECT_TRUE(v.tail_convergence.passed);
  EXPECT_TRUE(v.empty_set.passed);
}

TEST(MeasureVerify, OverlappingPartitionRejected) {
  const FuzzyMapping m = fx::two_atom_mapping();
  EXPECT_EQ(code_of([&] {
              (void)integral_measure_verify(m, {MeasurableSet({0, 1}), MeasurableSet({1})}, std::nullopt,
                                            grid_for(2));
            }),
            ErrorCode::InvalidArgument);
}

TEST(Decompose, PointValuedGivesTheta) {
  const FuzzyMapping m = fx::point_mapping();
  const Selection f = Selection::of(m, {{0.0, 0.0}, {4.0, 0.0}});
  const DecompositionResult split = decompose(m, f, grid_for(2));
  for (const auto& g : split.g.values()) {
    EXPECT_EQ(fuzzy_hausdorff(g, FuzzyNumber::null_element(2)), 0.0);
  }
  EXPECT_TRUE(split.passed());
  EXPECT_EQ(integral_additivity_check(m, split, MeasurableSet::all(m.space()), grid_for(2)), 0.0);
}

TEST(Decompose, SquaresAtCanonicalSelection) {
  const FuzzyMapping m = fx::square_mapping();
  const Selection f = canonical_mapping_selection(m, Direction({1.0, 0.0}));
  const DecompositionResult split = decompose(m, f, grid_for(2));
  EXPECT_TRUE(split.passed());
  // Second atom: level 1 is square(2) moved so (2,2) sits at the origin.
  EXPECT_LE(hausdorff(split.g.value(1).level_cut(1.0), ConvexBody(2, {{-4, -4}, {0, -4}, {-4, 0}, {0, 0}})),
            1e-12);
  for (const auto& c : split.level_checks) {
    EXPECT_TRUE(c.zero_member);
    EXPECT_GE(c.min_support, -1e-12);
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    const FuzzyNumber rebuilt = add(split.g.value(i), fuzzy_from_point(f.at(i)));
    EXPECT_LE(fuzzy_hausdorff(rebuilt, m.value(i), 1e-12), 1e-12);
    EXPECT_LE(split.reconstruction_residuals[i], 1e-12);
  }
}

TEST(Decompose, RejectsNonSelection) {
  const FuzzyMapping m = fx::square_mapping();
  // A hand-built selection at a lower level is not a level-1 selection.
  const Selection low = Selection::of(m, {{2.0, 0.0}, {3.0, 0.0}, {0.0, 0.0}}, 0.5);
  EXPECT_EQ(code_of([&] { (void)decompose(m, low, grid_for(2)); }), ErrorCode::NotASelection);
}

TEST(IntegralAdditivity, Examples) {
  const FuzzyMapping theta = fx::theta_mapping();
  const auto theta_split = decompose(theta, canonical_mapping_selection(theta, Direction({1.0, 0.0})), grid_for(2));
  EXPECT_EQ(integral_additivity_check(theta, theta_split, MeasurableSet::all(theta.space()), grid_for(2)), 0.0);

  const FuzzyMapping m = fx::two_atom_mapping();
  const Direction u = Direction::normalized({1.0, 2.0});
  const auto split = decompose(m, canonical_mapping_selection(m, u), grid_for(2));
  EXPECT_TRUE(split.passed());
  const MeasurableSet all = MeasurableSet::all(m.space());
  EXPECT_LE(integral_additivity_check(m, split, all, grid_for(2)), 1e-9);
  // Right side rebuilt from enumerated level bodies and the hand-summed selection.
  const IntegralResult lhs = fuzzy_pettis_integral(m, all, grid_for(2));
  Point fsum(2, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t c = 0; c < 2; ++c) fsum[c] += m.space().weight(i) * split.f.at(i)[c];
  }
  for (double r : lhs.value.levels()) {
    const ConvexBody g_level = oracle_level(split.g, all, r);
    const ConvexBody rhs = translate_by_negative(g_level, Point{-fsum[0], -fsum[1]});
    EXPECT_LE(hausdorff(lhs.value.level_cut(r), rhs, 1e-12), 1e-9);
  }
}

TEST(ScalarLinearity, Examples) {
  const FuzzyMapping f = fx::two_atom_mapping();
  const FuzzyMapping g = shrink_toward_selection(f, Direction({0.0, 1.0}), 0.5);
  const MeasurableSet all = MeasurableSet::all(f.space());
  const LinearityResiduals zero = scalar_linearity_check(f, g, 0.0, all, grid_for(2));
  EXPECT_TRUE(zero.zero_exact);
  EXPECT_EQ(zero.homogeneous, 0.0);
  EXPECT_EQ(scalar_linearity_check(f, g, 1.0, all, grid_for(2)).homogeneous, 0.0);
  const LinearityResiduals r = scalar_linearity_check(f, g, 2.5, all, grid_for(2));
  EXPECT_LE(r.additive, 1e-9);
  EXPECT_LE(r.homogeneous, 1e-9);
  EXPECT_EQ(code_of([&] { (void)scalar_linearity_check(f, g, -1.0, all, grid_for(2)); }),
            ErrorCode::InvalidArgument);
}

TEST(Core, Examples) {
  const FuzzyMapping m = fx::square_mapping();
  EXPECT_LE(hausdorff(core(m, MeasurableSet({0}), 1.0), fx::square(1.0)), 1e-12);
  // The null third atom carries a larger square that must not show up.
  EXPECT_LE(hausdorff(core(m, MeasurableSet({0, 2}), 1.0), fx::square(1.0)), 1e-12);
  EXPECT_EQ(code_of([&] { (void)core(m, MeasurableSet({2}), 1.0); }), ErrorCode::NullSet);
  EXPECT_EQ(code_of([&] { (void)core(m, MeasurableSet{}, 1.0); }), ErrorCode::NullSet);

  const FuzzyMapping apart(FiniteMeasureSpace({"a", "b"}, {1.0, 1.0}),
                           {FuzzyNumber::from_level_family({1.0}, {ConvexBody::cube({-3.0, 0.0}, 1.0)}),
                            FuzzyNumber::from_level_family({1.0}, {ConvexBody::cube({3.0, 0.0}, 1.0)})});
  EXPECT_LE(hausdorff(core(apart, MeasurableSet({0, 1}), 1.0),
                      ConvexBody(2, {{-4, -1}, {-4, 1}, {4, -1}, {4, 1}})),
            1e-12);
}

TEST(Dominates, Examples) {
  const FuzzyMapping m = fx::square_mapping();
  EXPECT_TRUE(dominates(m, m));
  const FuzzyMapping shrunk(m.space(), {scale_fuzzy(m.value(0), 0.5), scale_fuzzy(m.value(1), 0.5),
                                        scale_fuzzy(m.value(2), 0.5)});
  EXPECT_TRUE(dominates(shrunk, m));
  const FuzzyMapping inflated(
      m.space(), {FuzzyNumber::from_level_family({0.5, 1.0}, {fx::square(2.0), fx::square(2.0)}),
                  m.value(1), m.value(2)});
  EXPECT_FALSE(dominates(inflated, m));
}

TEST(CoreNonempty, Examples) {
  const FuzzyMapping m = fx::square_mapping();
  const auto sets = positive_sets(m.space());
  EXPECT_EQ(sets.size(), 6u);  // 7 nonempty subsets minus {s3}
  const CoreReport self = core_nonempty_check(m, m, sets, {0.5, 1.0});
  EXPECT_TRUE(self.all_pass());
  EXPECT_EQ(self.rows.size(), 12u);

  const Selection f = canonical_mapping_selection(m, Direction({1.0, 0.0}));
  std::vector<FuzzyNumber> points;
  for (const auto& p : f.points()) points.push_back(fuzzy_from_point(p));
  const FuzzyMapping singletons(m.space(), std::move(points));
  const CoreReport pts = core_nonempty_check(m, singletons, sets, {1.0});
  EXPECT_TRUE(pts.all_pass());
  EXPECT_LE(hausdorff(core(singletons, MeasurableSet({0, 1, 2}), 1.0), ConvexBody(2, {{1, 1}, {2, 2}})),
            1e-12);

  const FuzzyMapping inflated(
      m.space(), {FuzzyNumber::from_level_family({1.0}, {fx::square(9.0)}), m.value(1), m.value(2)});
  EXPECT_EQ(code_of([&] { (void)core_nonempty_check(m, inflated, sets, {1.0}); }),
            ErrorCode::InvalidArgument);
}

// Randomized scenarios in 1-3 dimensions.
class IntegralProperties : public ::testing::TestWithParam<int> {};

TEST_P(IntegralProperties, SupportIdentityAndEnumeration) {
  std::mt19937_64 rng(7000 + GetParam());
  for (int trial = 0; trial < 10; ++trial) {
    const FuzzyMapping m = fx::random_mapping(rng);
    const DirectionGrid& grid = grid_for(m.dims());
    const MeasurableSet a = fx::random_subset(rng, m.size());
    const IntegralResult r = fuzzy_pettis_integral(m, a, grid);
    const auto& lv = r.value.levels();
    for (double level : lv) {
      for (const Direction& u : grid) {
        EXPECT_NEAR(support(r.value.level_cut(level), u), scalar_integral(m, a, u, level), 1e-9);
      }
    }
    for (std::size_t i = 1; i < lv.size(); ++i) {
      EXPECT_TRUE(subset_of(r.value.level_cut(lv[i]), r.value.level_cut(lv[i - 1])));
    }
    if (vertex_product(m, a) <= 2e4 && m.dims() <= 3) {
      const ConvexBody expected = oracle_level(m, a, 1.0);
      EXPECT_LE(hausdorff(r.value.level_cut(1.0), expected), 1e-9);
    }
  }
}

TEST_P(IntegralProperties, DecompositionMeasureLinearityCore) {
  std::mt19937_64 rng(8000 + GetParam());
  fx::ScenarioShape shape;
  shape.max_atoms = 6;
  for (int trial = 0; trial < 5; ++trial) {
    const FuzzyMapping m = fx::random_mapping(rng, shape);
    const DirectionGrid& grid = grid_for(m.dims());
    const Direction u = Direction::normalized(fx::random_point(rng, m.dims()));
    const MeasurableSet all = MeasurableSet::all(m.space());

    const DecompositionResult split = decompose(m, canonical_mapping_selection(m, u), grid);
    EXPECT_TRUE(split.passed());
    EXPECT_LE(integral_additivity_check(m, split, all, grid), 1e-9);

    const auto parts = fx::random_partition(rng, m.size(), 3);
    const MeasureVerification v = integral_measure_verify(m, parts, std::nullopt, grid);
    EXPECT_TRUE(v.passed());

    const FuzzyMapping g = fx::random_mapping_on(rng, m.space(), m.dims());
    for (const LinearityResiduals& lin : scalar_linearity_sweep(m, g, {0.0, 1.0, 2.5}, all, grid)) {
      EXPECT_LE(lin.additive, 1e-9);
      EXPECT_LE(lin.homogeneous, 1e-9);
      EXPECT_TRUE(lin.zero_exact);
    }

    const FuzzyMapping dominated = shrink_toward_selection(m, u, 0.6);
    ASSERT_TRUE(dominates(dominated, m));
    const auto sets = positive_sets(m.space());
    std::vector<double> levels;
    for (const auto& value : m.values()) levels = merged_levels(levels, value.levels());
    EXPECT_TRUE(core_nonempty_check(m, dominated, sets, levels).all_pass());
    for (const auto& e : sets) {
      for (double level : levels) {
        std::vector<Point> cloud;
        for (std::size_t i : e.indices()) {
          if (m.space().weight(i) == 0.0) continue;
          for (const auto& p : m.value(i).level_cut(level).vertices()) cloud.push_back(p);
        }
        EXPECT_LE(hausdorff(core(m, e, level), ConvexBody(m.dims(), cloud)), 1e-9);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, IntegralProperties, ::testing::Range(0, 4));
