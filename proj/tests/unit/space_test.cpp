#include <gtest/gtest.h>

#include "helpers.hpp"
#include "riskmetric/rng.hpp"

using namespace riskmetric;
using namespace testing_support;

TEST(Rational, ArithmeticAndNormalization) {
  const Rational a(6, -4);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_THROW(Rational(1, 0), std::exception);
}

TEST(Rational, OverflowIsDetected) {
  const Rational big(INT64_MAX, 1);
  EXPECT_THROW(big + big, ArithmeticOverflow);
}

TEST(Real, ParseExactDecimals) {
  EXPECT_EQ(Real::parse("0.3", ArithmeticMode::Exact), q(3, 10));
  EXPECT_EQ(Real::parse("3/4", ArithmeticMode::Exact), q(3, 4));
  EXPECT_EQ(Real::parse("1e-2", ArithmeticMode::Exact), q(1, 100));
  EXPECT_FALSE(Real::parse("0.3", ArithmeticMode::Float).is_exact());
}

TEST(Real, MixedArithmeticTurnsInexact) {
  const Real x = q(1, 3) + Real::inexact(0.5);
  EXPECT_FALSE(x.is_exact());
  EXPECT_TRUE(approx_eq(x, Real::inexact(5.0 / 6.0)));
}

TEST(Space, ValidMetrics) {
  const auto two = FiniteMetricSpace::validate_metric({}, {{0, 1}, {1, 0}});
  EXPECT_EQ(two->size(), 2U);
  const auto s = p3();
  EXPECT_EQ(s->size(), 3U);
  EXPECT_EQ(s->diameter(), Real(2));
}

TEST(Space, AsymmetryNamesIndices) {
  try {
    FiniteMetricSpace::validate_metric({}, {{0, 3}, {1, 0}});
    FAIL() << "expected Asymmetry";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Asymmetry);
    EXPECT_EQ(e.indices(), (std::vector<std::size_t>{0, 1}));
  }
}

TEST(Space, OtherMetricFailures) {
  auto kind_of = [](std::vector<Values> d) {
    try {
      FiniteMetricSpace::validate_metric({}, d);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Parse;
  };
  EXPECT_EQ(kind_of({{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}), ErrorKind::TriangleViolation);
  EXPECT_EQ(kind_of({{0, -1}, {-1, 0}}), ErrorKind::NegativeDistance);
  EXPECT_EQ(kind_of({{0, 0}, {0, 0}}), ErrorKind::ZeroOffDiagonal);
  EXPECT_EQ(kind_of({{0, 1}, {1}}), ErrorKind::NotSquare);
  EXPECT_THROW(FiniteMetricSpace::validate_metric({"a", "a"}, {{0, 1}, {1, 0}}), Error);
}

TEST(Space, SublevelRelations) {
  const auto s = p3();
  const Relation t0 = sublevel_relation(s, 0);
  EXPECT_EQ(t0, Relation::diagonal(s));
  const Relation t1 = sublevel_relation(s, 1);
  EXPECT_EQ(t1.count(), 7U);
  EXPECT_TRUE(t1.contains(0, 1) && t1.contains(1, 0) && t1.contains(1, 2) && t1.contains(2, 1));
  EXPECT_FALSE(t1.contains(0, 2));
  EXPECT_EQ(sublevel_relation(s, 2).count(), 9U);
}

TEST(Space, DistanceLevels) {
  EXPECT_EQ(distance_levels(*p3()), (std::vector<Real>{0, 1, 2}));
  const auto two = FiniteMetricSpace::validate_metric({}, {{0, q(7, 2)}, {q(7, 2), 0}});
  EXPECT_EQ(distance_levels(*two), (std::vector<Real>{0, q(7, 2)}));
  const auto one = FiniteMetricSpace::validate_metric({}, {{0}});
  EXPECT_EQ(distance_levels(*one), (std::vector<Real>{0}));
}

TEST(Space, HausdorffDistance) {
  const auto s = p3();
  auto subset = [&](Mask m) { return PointSubset{s, m}; };
  EXPECT_EQ(hausdorff_distance(subset(0b001), subset(0b001)), Real(0));
  EXPECT_EQ(hausdorff_distance(subset(0b001), subset(0b101)), Real(2));
  EXPECT_EQ(hausdorff_distance(subset(0b011), subset(0b110)), Real(1));
}

TEST(Space, ModulusOfContinuity) {
  const auto s = p3();
  const PointFunction phi(s, vals({0, 1, 5}));
  EXPECT_EQ(modulus_of_continuity(phi, 0), Real(0));
  EXPECT_EQ(modulus_of_continuity(phi, 1), Real(4));
  EXPECT_EQ(modulus_of_continuity(phi, 2), Real(5));
}

TEST(Space, ProductUsesSupMetric) {
  const auto s = p3();
  const auto sq = FiniteMetricSpace::product(s, s);
  EXPECT_EQ(sq->size(), 9U);
  const std::size_t ab = sq->encode(std::vector<std::size_t>{0, 1});
  const std::size_t cb = sq->encode(std::vector<std::size_t>{2, 1});
  EXPECT_EQ(sq->distance(ab, cb), Real(2));
  EXPECT_EQ(sq->decode(cb), (std::vector<std::size_t>{2, 1}));
}

TEST(Relation, CompositionMatchesSublevelTriangle) {
  const auto s = p3();
  const Relation r1 = sublevel_relation(s, 1);
  EXPECT_TRUE(sublevel_relation(s, 2).subset_of(r1.compose(r1)));
  EXPECT_EQ(r1.transpose(), r1);
}

TEST(Rng, DerivedStreamsAreReproducible) {
  Rng a = Rng::stream(7, "unit", 3);
  Rng b = Rng::stream(7, "unit", 3);
  Rng c = Rng::stream(7, "unit", 4);
  const auto x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
}
