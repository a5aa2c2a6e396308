#include <gtest/gtest.h>

#include "helpers.hpp"
#include "riskmetric/oracles.hpp"

using namespace riskmetric;
using namespace testing_support;

namespace {

oracles::ProbabilityVector pv(const SpacePtr& s, Values w) { return oracles::ProbabilityVector(s, std::move(w)); }

}  // namespace

TEST(Strassen, SmallCases) {
  const auto s = p3();
  const Values p = vals({q(1, 2), q(1, 4), q(1, 4)});
  EXPECT_TRUE(oracles::strassen_feasible(pv(s, p), pv(s, p), Relation::diagonal(s)));
  EXPECT_FALSE(oracles::strassen_feasible(pv(s, vals({1, 0, 0})), pv(s, vals({q(1, 2), 0, q(1, 2)})), sublevel_relation(s, 1)));
  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto a = random_probability(3, rng);
    const auto b = random_probability(3, rng);
    EXPECT_TRUE(oracles::strassen_feasible(pv(s, a), pv(s, b), Relation::full(s, s)));
  }
}

TEST(Strassen, HallAndFlowAgreeOnRandomInstances) {
  Rng rng(77);
  for (int k = 0; k < 200; ++k) {
    const auto s = oracles::random_space(static_cast<std::size_t>(rng.uniform(2, 5)), rng);
    const auto a = pv(s, random_probability(s->size(), rng));
    const auto b = pv(s, random_probability(s->size(), rng));
    const Relation r = oracles::random_relation(s, s, rng);
    EXPECT_EQ(oracles::strassen_exhaustive(a, b, r), oracles::strassen_flow(a, b, r));
  }
}

TEST(Winf, SmallCases) {
  const auto s = p3();
  const Values p = vals({q(1, 2), q(1, 4), q(1, 4)});
  EXPECT_EQ(oracles::winf_distance(pv(s, p), pv(s, p)), Real(0));
  EXPECT_EQ(oracles::winf_distance(pv(s, vals({1, 0, 0})), pv(s, vals({0, 1, 0}))), Real(1));
  EXPECT_EQ(oracles::winf_distance(pv(s, vals({1, 0, 0})), pv(s, vals({q(1, 2), 0, q(1, 2)}))), Real(2));
}

TEST(Winf, RejectsNonProbabilities) {
  const auto s = p3();
  EXPECT_THROW(pv(s, vals({q(1, 2), q(1, 2), q(1, 2)})), Error);
  EXPECT_THROW(pv(s, vals({2, -1, 0})), Error);
}

TEST(CrossCheck, SmallRunHasNoDisagreements) {
  oracles::CrossCheckOptions o;
  o.additive_instances = 30;
  o.choquet_instances = 30;
  o.dirac_instances = 10;
  o.seed = 4;
  const auto report = oracles::criterion_cross_check(o);
  EXPECT_TRUE(report.pass()) << to_json(report).dump(2);
  // The fixed path instance is checked on top of the random ones.
  EXPECT_EQ(report.instances, 71U);
}

TEST(Io, SpaceRoundTrip) {
  const auto s = fixture_space("line5.json");
  const auto again = io::parse_space(io::to_json(*s), ArithmeticMode::Exact);
  EXPECT_TRUE(s->same_as(*again));
}

TEST(Io, MeasureRoundTrip) {
  const auto s = p3();
  const std::string text = R"([
    {"type": "dirac", "point": "b"},
    {"type": "expectation", "p": ["1/2", "1/4", 0.25]},
    {"type": "cvar", "p": ["1/3", "1/3", "1/3"], "level": "1/2"},
    {"type": "mixture", "weights": ["1/2", "1/2"], "components": [{"type": "unanimity"}, {"type": "possibility"}]},
    {"type": "max", "components": [{"type": "dirac", "point": "a"}, {"type": "dirac", "point": "c"}]}
  ])";
  Rng rng(1);
  const auto probes = probes::random_functions(3, 20, rng);
  for (const auto& doc : io::parse_text(text)) {
    const auto mu = io::parse_measure(doc, s, ArithmeticMode::Exact);
    const auto back = io::parse_measure(io::to_json(mu), s, ArithmeticMode::Exact);
    for (const auto& phi : probes) EXPECT_EQ(mu(phi), back(phi));
  }
}

TEST(Io, TwoPointParsed) {
  const auto s = fixture_space("two_point.json");
  const auto doc = io::parse_text(R"({"type": "two-point", "alpha": [0, 0, 1, 0], "lambda": ["-inf", 0, 0, "+inf"]})");
  const auto mu = io::parse_measure(doc, s, ArithmeticMode::Exact);
  EXPECT_EQ(mu(vals({9, 3})), Real(3));
}

TEST(Io, ExactModeNeedsFullCapacityTable) {
  const auto s = p3();
  const auto doc = io::parse_text(R"({"type": "choquet", "capacity": {"a": "1/2", "a,b,c": 1}})");
  EXPECT_THROW(io::parse_measure(doc, s, ArithmeticMode::Exact), Error);
  const auto mu = io::parse_measure(doc, s, ArithmeticMode::Float);
  EXPECT_TRUE(approx_eq(mu(vals({1, 0, 0})), Real::inexact(0.5)));
}

TEST(Io, MalformedInputsAreParseErrors) {
  try {
    io::parse_text("{\"points\": [");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  const auto s = p3();
  try {
    io::parse_measure(io::parse_text(R"({"type": "dirac", "point": "zz"})"), s, ArithmeticMode::Exact);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(Io, ProductLabelsRoundTripInSubsetKeys) {
  const auto s = p3();
  const auto sq = FiniteMetricSpace::product(s, s);
  const Mask m = (Mask{1} << 1) | (Mask{1} << 5);
  EXPECT_EQ(io::parse_subset_key(*sq, io::subset_key(*sq, m)), m);
}

TEST(Io, DigestIsStable) {
  EXPECT_EQ(io::digest("abc"), io::digest("abc"));
  EXPECT_NE(io::digest("abc"), io::digest("abd"));
}
