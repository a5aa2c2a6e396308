#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "riskmetric/audit.hpp"
#include "riskmetric/axioms.hpp"
#include "riskmetric/support.hpp"

using namespace riskmetric;
using namespace testing_support;

namespace {

// Layer-cake form: min(phi) + sum over the distinct levels l_k > min of
// (l_k - l_{k-1}) * v({phi >= l_k}).
Real layer_cake(const Capacity& v, const Values& phi) {
  std::set<Real> levels(phi.begin(), phi.end());
  auto it = levels.begin();
  Real prev = *it;
  Real out = prev;
  for (++it; it != levels.end(); ++it) {
    Mask upper = 0;
    for (std::size_t i = 0; i < phi.size(); ++i)
      if (phi[i] >= *it) upper |= Mask{1} << i;
    out += (*it - prev) * v[upper];
    prev = *it;
  }
  return out;
}

RiskMeasure two_point_member(const SpacePtr& s, std::array<Real, 4> alpha, ShapeFunction f,
                             std::array<ExtendedReal, 4> lambda = {ExtendedReal::finite(0), ExtendedReal::finite(0),
                                                                   ExtendedReal::finite(0), ExtendedReal::finite(0)}) {
  TwoPointParams p{alpha, lambda, std::move(f)};
  return RiskMeasure::two_point(s, p);
}

SpacePtr two() { return fixture_space("two_point.json"); }

}  // namespace

TEST(Measures, DiracEvaluates) {
  const auto s = p3();
  EXPECT_EQ(RiskMeasure::dirac(s, 0)(vals({7, 1, 2})), Real(7));
}

TEST(Measures, NormedOnConstants) {
  const auto s = p3();
  for (const auto& mu : {RiskMeasure::dirac(s, 1), unanimity_min(s), possibility_max(s), expectation(s, vals({q(1, 2), q(1, 4), q(1, 4)}))})
    EXPECT_EQ(mu(probes::constant(3, q(-5, 3))), q(-5, 3));
}

TEST(Measures, MixtureIsConvexCombination) {
  const auto s = p3();
  const auto mu = RiskMeasure::mixture(vals({q(1, 2), q(1, 2)}), {RiskMeasure::dirac(s, 0), RiskMeasure::dirac(s, 2)});
  EXPECT_EQ(mu(vals({0, 1, 4})), Real(2));
  EXPECT_TRUE(mu.is_capacity());
  EXPECT_THROW(RiskMeasure::mixture(vals({q(1, 2), q(1, 3)}), {RiskMeasure::dirac(s, 0), RiskMeasure::dirac(s, 2)}), Error);
}

TEST(Choquet, ExamplesFromHandEvaluation) {
  const auto s2 = two();
  EXPECT_EQ(RiskMeasure::choquet(Capacity::expectation(s2, vals({q(1, 2), q(1, 2)})))(vals({2, 4})), Real(3));
  EXPECT_EQ(unanimity_min(p3())(vals({2, 4, 1})), Real(1));
  const Capacity v = Capacity::from_table(s2, vals({0, q(3, 10), q(1, 2), 1}));
  const Values phi = vals({2, 1});
  EXPECT_EQ(choquet_eval(v, phi), q(13, 10));
  EXPECT_EQ(layer_cake(v, phi), q(13, 10));
}

TEST(Choquet, AgreesWithLayerCakeOnRandomCapacities) {
  Rng rng(11);
  for (const auto& name : {"two_point.json", "p3.json", "cycle4.json", "line5.json", "tree6.json"}) {
    const auto s = fixture_space(name);
    for (int k = 0; k < 20; ++k) {
      const Capacity v = random_capacity(s, rng);
      ASSERT_TRUE(v.is_valid());
      for (const auto& phi : probes::random_functions(s->size(), 10, rng, -3, 3, 2)) EXPECT_EQ(choquet_eval(v, phi), layer_cake(v, phi));
    }
  }
}

TEST(Choquet, QuantileAndDistortion) {
  const auto s = p3();
  const Values p = vals({q(1, 2), q(1, 4), q(1, 4)});
  // Upper sets count when their probability exceeds 1 - level.
  EXPECT_EQ(var_quantile(s, p, q(3, 4))(vals({0, 10, 20})), Real(10));
  EXPECT_EQ(var_quantile(s, p, q(1, 2))(vals({0, 10, 20})), Real(0));
  // CVaR at level 1/2 averages the upper half of the distribution.
  const auto es = cvar(s, p, q(1, 2));
  EXPECT_EQ(es(vals({0, 10, 20})), Real(15));
}

TEST(TwoPoint, ReducesToDirac) {
  const auto s = two();
  const auto mu = two_point_member(s, {1, 0, 0, 0}, ShapeFunction::zero());
  EXPECT_EQ(mu(vals({5, 9})), Real(5));
}

TEST(TwoPoint, PureMaxTerm) {
  const auto s = two();
  const auto mu = two_point_member(s, {0, 0, 1, 0}, ShapeFunction::zero());
  EXPECT_EQ(mu(vals({1, 3})), Real(3));
}

TEST(TwoPoint, WeightTermUsesFirstBranch) {
  const auto s = two();
  TwoPointParams p{{q(1, 2), q(1, 2), 0, 0},
                   {ExtendedReal::finite(0), ExtendedReal::finite(0), ExtendedReal::finite(0), ExtendedReal::finite(0)},
                   ShapeFunction::identity()};
  const auto v = two_point_eval(p, vals({1, 3}));
  EXPECT_EQ(v.value, Real(3));
  EXPECT_EQ(v.branch, 1);
  EXPECT_FALSE(v.branch_gap);
  const auto mu = RiskMeasure::two_point(s, p);
  Rng rng(3);
  for (const auto& phi : probes::random_functions(2, 50, rng, -4, 4, 2))
    EXPECT_EQ(mu(phi), phi[1]);
}

TEST(TwoPoint, InfiniteOffsetsFollowExtendedConventions) {
  const auto s = two();
  const auto mu = two_point_member(s, {0, 0, 1, 0}, ShapeFunction::zero(),
                                   {ExtendedReal::neg_inf(), ExtendedReal::finite(0), ExtendedReal::finite(0), ExtendedReal::finite(0)});
  EXPECT_EQ(mu(vals({9, 3})), Real(3));
}

TEST(TwoPoint, RejectsInvalidParams) {
  TwoPointParams p{{q(1, 2), q(1, 4), 0, 0},
                   {ExtendedReal::finite(0), ExtendedReal::finite(0), ExtendedReal::finite(0), ExtendedReal::finite(0)},
                   ShapeFunction::zero()};
  EXPECT_THROW(p.validate(), Error);
  p.alpha = {q(1, 2), q(1, 2), 0, 0};
  p.f = ShapeFunction({{0, 0}, {1, 2}});
  EXPECT_THROW(p.validate(), Error);
}

TEST(Axioms, MonotoneCapacityPassesExactly) {
  Rng rng(5);
  const auto s = p3();
  const auto r = verify_axioms(RiskMeasure::choquet(random_capacity(s, rng)));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.method, AxiomReport::Method::Exact);
}

TEST(Axioms, NonMonotoneTableNamesEntries) {
  const auto s = two();
  const auto mu = RiskMeasure::choquet(Capacity::unchecked(s, vals({0, q(3, 4), 0, q(1, 2)})));
  const auto r = verify_axioms(mu);
  ASSERT_FALSE(r.pass);
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.axiom != Axiom::Monotonicity && v.axiom != Axiom::Normedness) continue;
    if (v.table_entries && v.table_entries->first == 0b01 && v.table_entries->second == 0b11) {
      found = true;
      ASSERT_EQ(v.functions.size(), 2U);
      EXPECT_EQ(v.functions[0], vals({1, 0}));
      EXPECT_EQ(v.functions[1], vals({1, 1}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Axioms, SampledTwoPointMemberPasses) {
  const auto s = two();
  const auto mu = two_point_member(s, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}, ShapeFunction::zero());
  AxiomOptions o;
  o.mode = AxiomOptions::Mode::Sampled;
  o.count = 1000;
  o.seed = 9;
  const auto r = verify_axioms(mu, o);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.method, AxiomReport::Method::Sampled);
}

TEST(Axioms, SampledViolationReverifies) {
  const auto s = two();
  const auto bad = RiskMeasure::black_box(s, [](std::span<const Real> phi) { return phi[0] * phi[0]; }, "square");
  AxiomOptions o;
  o.seed = 1;
  const auto r = verify_axioms(bad, o);
  ASSERT_FALSE(r.pass);
  for (const auto& v : r.violations) EXPECT_TRUE(reverify(bad, v));
}

TEST(Support, ExamplesFromSmallCases) {
  const auto s = p3();
  EXPECT_EQ(support(RiskMeasure::dirac(s, 1)).subset.mask, 0b010U);
  const auto mix = RiskMeasure::mixture(vals({q(1, 2), q(1, 2)}), {RiskMeasure::dirac(s, 0), RiskMeasure::dirac(s, 1)});
  EXPECT_EQ(support(mix).subset.mask, 0b011U);
  // v(S) = v(S n {a}): carried by {a}.
  Values table(8);
  for (Mask m = 0; m < 8; ++m) table[m] = (m & 1U) ? Real(1) : Real(0);
  const auto carried = RiskMeasure::choquet(Capacity::from_table(s, table));
  EXPECT_EQ(support(carried).subset.mask, 0b001U);
}

TEST(Support, NullPointRouteMatchesExhaustive) {
  Rng rng(21);
  for (const auto& name : {"two_point.json", "p3.json", "cycle4.json", "line5.json", "tree6.json"}) {
    const auto s = fixture_space(name);
    for (int k = 0; k < 30; ++k) {
      const auto mu = RiskMeasure::choquet(random_capacity(s, rng));
      EXPECT_EQ(support_null_points(mu).mask, support_exhaustive(mu).mask) << name << " #" << k;
    }
  }
}

TEST(Support, SampledTierFindsLatticeSupport) {
  const auto s = two();
  const auto sq = FiniteMetricSpace::product(s, s);
  auto at = [&](std::size_t i, std::size_t j) { return RiskMeasure::dirac(sq, sq->encode(std::vector<std::size_t>{i, j})); };
  const auto mu = RiskMeasure::lattice_max({at(0, 0), RiskMeasure::lattice_min({at(0, 1), at(1, 0)})});
  const auto supp = support(mu);
  EXPECT_FALSE(supp.exact);
  // (0,0), (0,1) and (1,0) all matter; (1,1) never does.
  const Mask expected = (Mask{1} << sq->encode(std::vector<std::size_t>{0, 0})) | (Mask{1} << sq->encode(std::vector<std::size_t>{0, 1})) |
                        (Mask{1} << sq->encode(std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(supp.subset.mask, expected);
  // Projection to the first factor reads only phi(0): the support shrinks strictly.
  const auto pushed = pushforward(PointMap::projection(sq, {0}), mu);
  const auto pushed_supp = support(pushed);
  EXPECT_EQ(pushed_supp.subset.mask, 0b01U);
  EXPECT_EQ(PointMap::projection(sq, {0}).image_of(expected), 0b11U);
}

TEST(Pushforward, IdentityConstantAndSwap) {
  const auto s = p3();
  Rng rng(4);
  const auto mu = RiskMeasure::choquet(random_capacity(s, rng));
  const auto same = pushforward(PointMap::identity(s), mu);
  EXPECT_EQ(equal_measures(mu, same).status, EqualityVerdict::Status::Yes);

  const auto pt = FiniteMetricSpace::validate_metric({"pt"}, {{0}});
  const auto collapsed = pushforward(PointMap(s, pt, {0, 0, 0}), mu);
  EXPECT_EQ(collapsed(vals({q(7, 3)})), q(7, 3));

  const PointMap swap(s, s, {2, 1, 0});
  const auto moved = pushforward(swap, RiskMeasure::dirac(s, 0));
  EXPECT_EQ(equal_measures(moved, RiskMeasure::dirac(s, 2)).status, EqualityVerdict::Status::Yes);
}

TEST(Pushforward, SupportInsideImageOnEnsemble) {
  const auto s = p3();
  EnsembleSpec spec;
  spec.count = 40;
  spec.seed = 2;
  const PointMap f(s, s, {0, 0, 2});
  for (const auto& mu : generate_ensemble(s, spec)) {
    const Mask image = f.image_of(support(mu).subset.mask);
    EXPECT_EQ(support(pushforward(f, mu)).subset.mask & ~image, 0U);
  }
}

TEST(Equality, Verdicts) {
  const auto s = p3();
  const auto eq = equal_measures(RiskMeasure::dirac(s, 0), RiskMeasure::dirac(s, 1));
  ASSERT_EQ(eq.status, EqualityVerdict::Status::No);
  ASSERT_TRUE(eq.witness.has_value());
  EXPECT_NE(RiskMeasure::dirac(s, 0)(*eq.witness), RiskMeasure::dirac(s, 1)(*eq.witness));

  const auto a = expectation(s, vals({q(1, 3), q(1, 3), q(1, 3)}));
  const auto b = expectation(s, vals({q(1, 3), q(1, 3), q(1, 3)}));
  EXPECT_EQ(equal_measures(a, b).status, EqualityVerdict::Status::Yes);

  const auto s2 = two();
  const auto fam = two_point_member(s2, {q(1, 2), q(1, 2), 0, 0}, ShapeFunction::identity());
  EXPECT_EQ(equal_measures(fam, RiskMeasure::dirac(s2, 1)).status, EqualityVerdict::Status::Undecided);
}
