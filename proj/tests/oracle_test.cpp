#include <gtest/gtest.h>

#include <random>

#include "fuzzint/errors.hpp"
#include "fuzzint/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/random_fixtures.hpp"

using namespace fuzzint;
using namespace fuzzint::oracle;
namespace fx = fuzzint::testing;

namespace {

FuzzyNumber nested_squares(double outer, double inner) {
  return FuzzyNumber::from_level_family({0.5, 1.0}, {fx::square(outer), fx::square(inner)});
}

// Smallest kernel grade over the grid cell neighbourhood x + h * {-1, 0, 1}^d.
double neighbourhood_min_grade(const FuzzyNumber& w, const Point& x, double h) {
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
    lowest = std::min(lowest, membership(w, y).value());
  }
  return lowest;
}

}  // namespace

TEST(OracleSupport, MatchesKernelExactly) {
  const Direction e1({1.0, 0.0});
  EXPECT_EQ(oracle_support(fx::square(1.0), e1), 1.0);
  const Direction u = Direction::normalized({1.0, 1.0});
  EXPECT_EQ(oracle_support(ConvexBody(2, {{0, 0}, {3, 1}, {1, 3}}), u),
            support(ConvexBody(2, {{0, 0}, {3, 1}, {1, 3}}), u));
  std::mt19937_64 rng(9000);
  for (std::size_t d = 1; d <= 3; ++d) {
    const DirectionGrid grid = DirectionGrid::make_default(d);
    for (int trial = 0; trial < 30; ++trial) {
      const ConvexBody b = fx::random_body(rng, d, 12);
      for (const Direction& v : grid) EXPECT_EQ(oracle_support(b, v), support(b, v));
    }
  }
  EXPECT_THROW((void)oracle_support(fx::square(1.0), Direction({1.0})), Error);
}

TEST(OracleSupMin, Examples) {
  const FuzzyNumber theta = FuzzyNumber::null_element(2);
  const SampleGrid unit(Point{-2.0, -2.0}, Point{2.0, 2.0}, 0.5);
  EXPECT_EQ(oracle_supmin_add(theta, theta, {0.0, 0.0}, unit).value(), 1.0);

  const FuzzyNumber a = fuzzy_from_point({1.0, 0.0});
  const FuzzyNumber b = fuzzy_from_point({0.5, -1.0});
  EXPECT_EQ(oracle_supmin_add(a, b, {1.5, -1.0}, unit).value(), 1.0);
  EXPECT_EQ(oracle_supmin_add(a, b, {1.0, -1.0}, unit).value(), 0.0);
}

TEST(OracleSupMin, CoverageChecked) {
  const SampleGrid small(Point{-1.0, -1.0}, Point{1.0, 1.0}, 0.5);
  try {
    (void)oracle_supmin_add(nested_squares(2.0, 1.0), FuzzyNumber::null_element(2), {0.0, 0.0}, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CoverageViolation);
  }
}

TEST(OracleSupMin, NestedSquaresAgreeWithLevelwiseAdd) {
  const FuzzyNumber u = nested_squares(2.0, 1.0);
  const FuzzyNumber v = FuzzyNumber::from_level_family(
      {0.25, 1.0}, {ConvexBody::cube({1.0, 0.0}, 1.5), ConvexBody::cube({1.0, 0.0}, 0.5)});
  const FuzzyNumber w = add(u, v);
  const SampleGrid grid = SampleGrid::covering({&u.bodies().front(), &v.bodies().front()}, 0.25);
  std::mt19937_64 rng(9100);
  std::uniform_int_distribution<int> cell(-20, 28);
  for (int k = 0; k < 25; ++k) {
    // On-grid targets decompose exactly on the grid.
    const Point x{0.25 * cell(rng), 0.25 * cell(rng)};
    EXPECT_EQ(oracle_supmin_add(u, v, x, grid).value(), membership(w, x).value())
        << x[0] << "," << x[1];
  }
  std::uniform_real_distribution<double> coord(-5.0, 7.0);
  for (int k = 0; k < 25; ++k) {
    const Point x{coord(rng), coord(rng)};
    const double oracle = oracle_supmin_add(u, v, x, grid).value();
    EXPECT_LE(oracle, membership(w, x).value());
    EXPECT_GE(oracle, neighbourhood_min_grade(w, x, grid.step()));
  }
}

TEST(SampleGrid, CoveringDefaultsToDiameterOver200) {
  const ConvexBody b = fx::square(1.0);
  const SampleGrid g = SampleGrid::covering({&b});
  EXPECT_DOUBLE_EQ(g.step(), std::sqrt(8.0) / 200.0);
  EXPECT_NO_THROW(g.require_covers(b));
  EXPECT_THROW(SampleGrid(Point{0.0}, Point{1.0}, 0.0), Error);
  try {
    SampleGrid(Point{0.0, 0.0, 0.0}, Point{1.0, 1.0, 1.0}, 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
  }
}

TEST(OracleHullMembership, Examples) {
  const std::vector<Point> tri{{0, 0}, {3, 1}, {1, 3}};
  EXPECT_TRUE(oracle_hull_membership({4.0 / 3.0, 4.0 / 3.0}, tri, 1e-9));
  EXPECT_FALSE(oracle_hull_membership({10.0, 10.0}, tri, 1e-9));
  EXPECT_TRUE(oracle_hull_membership({1.5, 0.5}, tri, 1e-9));
  EXPECT_NEAR(oracle_hull_distance({2.0, 0.0}, fx::square(1.0).vertices()), 1.0, 1e-12);
  std::vector<Point> many(13, Point{0.0, 0.0});
  try {
    (void)oracle_hull_membership({0.0, 0.0}, many, 1e-9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InstanceTooLarge);
  }
  EXPECT_THROW((void)oracle_hull_membership({0, 0, 0, 0}, {{0, 0, 0, 0}}, 1e-9), Error);
}

TEST(OracleHullMembership, AgreesWithKernelContains) {
  std::mt19937_64 rng(9200);
  for (std::size_t d = 1; d <= 3; ++d) {
    for (int trial = 0; trial < 40; ++trial) {
      const ConvexBody b = fx::random_body(rng, d, 12);
      for (int s = 0; s < 10; ++s) {
        const Point x = fx::random_point(rng, d, -3.0, 3.0);
        const double exact = oracle_hull_distance(x, b.vertices());
        // Skip points whose classification is decided by the tolerance band itself.
        if (std::abs(exact - 1e-9) < 1e-10) continue;
        EXPECT_EQ(oracle_hull_membership(x, b.vertices(), 1e-9), contains(b, x, 1e-9));
      }
    }
  }
}

TEST(WeightedSumPoints, EnumeratesCombinations) {
  const ConvexBody a(2, {{0, 0}, {1, 0}});
  const ConvexBody b(2, {{0, 0}, {0, 1}});
  const auto pts = weighted_sum_points({&a, &b}, {2.0, 3.0});
  EXPECT_EQ(pts.size(), 4u);
  EXPECT_LE(hausdorff(ConvexBody(2, pts), ConvexBody(2, {{0, 0}, {2, 0}, {0, 3}, {2, 3}})), 1e-12);
  EXPECT_THROW((void)weighted_sum_points({&a}, {1.0, 2.0}), Error);
}
