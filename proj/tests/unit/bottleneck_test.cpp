#include <gtest/gtest.h>

#include "helpers.hpp"
#include "riskmetric/audit.hpp"
#include "riskmetric/oracles.hpp"

using namespace riskmetric;
using namespace testing_support;

TEST(Distance, IdentityAndDiracs) {
  const auto s = p3();
  Rng rng(1);
  const auto mu = RiskMeasure::choquet(random_capacity(s, rng));
  EXPECT_EQ(rho_O(mu, mu).value, Real(0));
  const auto r = rho_O(RiskMeasure::dirac(s, 0), RiskMeasure::dirac(s, 2));
  EXPECT_EQ(r.value, Real(2));
  EXPECT_TRUE(r.exact());
}

TEST(Distance, ExpectationsMatchBottleneckTransport) {
  const auto s = p3();
  const Values p = vals({1, 0, 0});
  const Values qv = vals({q(1, 2), 0, q(1, 2)});
  EXPECT_EQ(rho_O(expectation(s, p), expectation(s, qv)).value, Real(2));
  EXPECT_EQ(oracles::winf_distance(oracles::ProbabilityVector(s, p), oracles::ProbabilityVector(s, qv)), Real(2));
}

TEST(Distance, UnanimityToDiracIsEccentricity) {
  const auto s = p3();
  EXPECT_EQ(rho_O(unanimity_min(s), RiskMeasure::dirac(s, 1)).value, Real(1));
  EXPECT_EQ(rho_O(unanimity_min(s), RiskMeasure::dirac(s, 0)).value, Real(2));
  AdmissibilityOptions sampled;
  sampled.force_sampled = true;
  EXPECT_EQ(admissible(unanimity_min(s), RiskMeasure::dirac(s, 1), sublevel_relation(s, 0), sampled).status,
            FeasibilityVerdict::Status::Infeasible);
}

TEST(Distance, LadderSwitchesOnce) {
  const auto s = fixture_space("line5.json");
  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    const auto r = rho_O(RiskMeasure::choquet(random_capacity(s, rng)), RiskMeasure::choquet(random_capacity(s, rng)));
    bool feasible_seen = false;
    for (const auto& step : r.ladder) {
      if (step.status == FeasibilityVerdict::Status::Feasible) feasible_seen = true;
      else EXPECT_FALSE(feasible_seen);
    }
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->declared_support().max_distance(), r.value);
  }
}

TEST(Distance, RestrictingToSupportsNeverLowersTheValue) {
  const auto s = fixture_space("cycle4.json");
  EnsembleSpec spec;
  spec.count = 16;
  spec.seed = 3;
  spec.lattice = 0;
  const auto ms = generate_ensemble(s, spec);
  DistanceOptions restricted;
  restricted.restrict_to_supports = true;
  std::size_t agree = 0, pairs = 0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); j += 2) {
      const Real full = rho_O(ms[i], ms[j]).value;
      const Real cut = rho_O(ms[i], ms[j], restricted).value;
      EXPECT_LE(full, cut);
      ++pairs;
      if (full == cut) ++agree;
    }
  EXPECT_GT(agree, pairs / 2);
}

TEST(Distance, CouplingSupportCanLeaveTheSupportRectangle) {
  // delta_w against a measure with full support: the lower extension on the
  // t = 1 sublevel couples them although e, at distance 2 from w, carries
  // weight in the second marginal. The support-restricted path cannot see it.
  const auto s = fixture_space("cycle4.json");
  const auto mu1 = RiskMeasure::dirac(s, 3);
  const auto mu2 = io::parse_measure(io::parse_text(R"({"type": "mixture", "weights": ["1/2", "1/2"], "components": [
    {"type": "dirac", "point": "n"},
    {"type": "choquet", "capacity": {"n": 1, "e": 0, "n,e": 1, "s": "5/12", "n,s": 1, "e,s": "3/4", "n,e,s": 1, "w": 1,
     "n,w": 1, "e,w": 1, "n,e,w": 1, "s,w": 1, "n,s,w": 1, "e,s,w": 1, "n,e,s,w": 1}}]})"),
                                     s, ArithmeticMode::Exact);
  const auto full = rho_O(mu1, mu2);
  EXPECT_EQ(full.value, Real(1));
  ASSERT_TRUE(full.witness.has_value());
  EXPECT_TRUE(verify_coupling(*full.witness).pass);
  DistanceOptions restricted;
  restricted.restrict_to_supports = true;
  EXPECT_EQ(rho_O(mu1, mu2, restricted).value, Real(2));
}

TEST(Distance, AxiomGateRejectsBadInput) {
  const auto s = fixture_space("two_point.json");
  const auto bad = RiskMeasure::choquet(Capacity::unchecked(s, vals({0, q(3, 4), 0, q(1, 2)})));
  try {
    rho_O(bad, RiskMeasure::dirac(s, 0));
    FAIL() << "expected AxiomFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AxiomFailure);
  }
}

TEST(Distance, TwoPointSpaceTakesLadderValues) {
  const auto s = FiniteMetricSpace::validate_metric({}, {{0, q(5, 2)}, {q(5, 2), 0}});
  EnsembleSpec spec;
  spec.count = 20;
  spec.seed = 8;
  const auto ms = generate_ensemble(s, spec);
  const auto d = distance_matrix(ms);
  for (const auto& row : d)
    for (const auto& r : row) EXPECT_TRUE(r.value == Real(0) || r.value == q(5, 2));
}

TEST(Matrix, DiracsReproduceTheMetric) {
  const auto s = p3();
  std::vector<RiskMeasure> ms;
  for (std::size_t i = 0; i < 3; ++i) ms.push_back(RiskMeasure::dirac(s, i));
  const auto d = distance_matrix(ms);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(d[i][j].value, s->distance(i, j));
  const auto one = distance_matrix({ms[1]});
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0][0].value, Real(0));
}

TEST(Matrix, ParallelMatchesSerial) {
  const auto s = fixture_space("cycle4.json");
  EnsembleSpec spec;
  spec.count = 14;
  spec.seed = 5;
  const auto ms = generate_ensemble(s, spec);
  const auto par = distance_matrix(ms);
  const auto ser = distance_matrix_serial(ms);
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = 0; j < ms.size(); ++j) {
      EXPECT_EQ(par[i][j].value, ser[i][j].value);
      EXPECT_EQ(par[i][j].certification, ser[i][j].certification);
    }
}

TEST(Matrix, RandomChoquetSymmetricWithTriangle) {
  const auto s = fixture_space("cycle4.json");
  Rng rng(30);
  std::vector<RiskMeasure> ms;
  for (int k = 0; k < 10; ++k) ms.push_back(RiskMeasure::choquet(random_capacity(s, rng)));
  const auto d = distance_matrix(ms);
  for (std::size_t i = 0; i < ms.size(); ++i) {
    EXPECT_EQ(d[i][i].value, Real(0));
    for (std::size_t j = 0; j < ms.size(); ++j) {
      EXPECT_EQ(d[i][j].value, d[j][i].value);
      for (std::size_t k = 0; k < ms.size(); ++k) EXPECT_LE(d[i][k].value, d[i][j].value + d[j][k].value);
    }
  }
}

TEST(Matrix, CompositionStabilityOfSublevels) {
  // Feasible at t1 for (mu1, mu2) and at t2 for (mu2, mu3) implies feasible on
  // the composed relation, which sits inside the (t1 + t2) sublevel.
  const auto s = fixture_space("line5.json");
  Rng rng(40);
  for (int k = 0; k < 10; ++k) {
    const auto a = RiskMeasure::choquet(random_capacity(s, rng));
    const auto b = RiskMeasure::choquet(random_capacity(s, rng));
    const auto c = RiskMeasure::choquet(random_capacity(s, rng));
    const auto ab = rho_O(a, b);
    const auto bc = rho_O(b, c);
    const Relation composed = sublevel_relation(s, ab.value).compose(sublevel_relation(s, bc.value));
    EXPECT_EQ(admissible(a, c, composed).status, FeasibilityVerdict::Status::Feasible);
  }
}

TEST(Audit, MetricAxiomsOnP3) {
  const auto s = p3();
  EnsembleSpec spec;
  spec.count = 50;
  spec.seed = 12;
  spec.lattice = 0;
  const auto report = metric_axiom_audit(s, spec);
  EXPECT_TRUE(report.pass()) << to_json(report).dump(2);
  EXPECT_EQ(report.instances, 50U);
}

TEST(Audit, DiameterAttained) {
  const auto s = p3();
  EXPECT_EQ(rho_O(unanimity_min(s), possibility_max(s)).value, Real(2));
}

TEST(Audit, RecordedFailureReverifies) {
  // A deliberately wrong triangle payload must not reverify.
  AuditFailure f;
  f.check = "triangle";
  f.payload = io::Json::object();
  EXPECT_FALSE(reverify(f));
}

TEST(Convergence, ConstantSequence) {
  const auto s = p3();
  std::vector<RiskMeasure> seq(4, RiskMeasure::dirac(s, 0));
  const auto report = convergence_audit(seq, RiskMeasure::dirac(s, 0));
  for (const auto& row : convergence_rows(report)) {
    EXPECT_EQ(row.gap, Real(0));
    EXPECT_EQ(row.distance, Real(0));
    EXPECT_EQ(row.hausdorff, Real(0));
  }
  EXPECT_TRUE(report.discrepancies.empty());
}

TEST(Convergence, MixtureSequenceIsFlagged) {
  const auto s = p3();
  const auto seq = mixture_sequence(s, 0, 2, 8);
  const auto report = convergence_audit(seq, RiskMeasure::dirac(s, 0));
  EXPECT_TRUE(report.pass());
  ASSERT_EQ(report.discrepancies.size(), 1U);
  EXPECT_TRUE(reverify(report.discrepancies.front()));
  std::vector<Real> gaps;
  for (const auto& row : convergence_rows(report)) {
    gaps.push_back(row.gap);
    if (row.index > 1) {
      EXPECT_EQ(row.distance, Real(2));
      EXPECT_EQ(row.hausdorff, Real(2));
    }
    EXPECT_TRUE(row.lipschitz);
  }
  EXPECT_TRUE(tends_to_zero(gaps));
}

TEST(Convergence, EntrywiseCapacitiesWithEventualEquality) {
  const auto s = p3();
  const Values base = Capacity::expectation(s, vals({q(1, 2), q(1, 4), q(1, 4)})).table();
  const Values target = Capacity::expectation(s, vals({q(1, 3), q(1, 3), q(1, 3)})).table();
  auto member = [&](int n) {
    Values t(base.size());
    for (std::size_t m = 0; m < t.size(); ++m) t[m] = n > 4 ? target[m] : target[m] + (base[m] - target[m]) * q(1, n * n);
    return RiskMeasure::choquet(Capacity::from_table(s, t));
  };
  std::vector<RiskMeasure> seq;
  for (int n = 1; n <= 8; ++n) seq.push_back(member(n));
  const auto limit = RiskMeasure::choquet(Capacity::from_table(s, target));
  const auto report = convergence_audit(seq, limit);
  std::vector<Real> r;
  for (const auto& row : convergence_rows(report)) r.push_back(row.distance);
  EXPECT_TRUE(tends_to_zero(r));
  EXPECT_TRUE(report.pass());
  EXPECT_TRUE(report.discrepancies.empty());
}

TEST(Convergence, StrictEntrywiseApproachStaysOnTheLadder) {
  // Distances take values in the distance levels, so a sequence that never
  // equals its limit keeps r_n at a positive level.
  const auto s = p3();
  const Values target = Capacity::expectation(s, vals({q(1, 3), q(1, 3), q(1, 3)})).table();
  std::vector<RiskMeasure> seq;
  for (int n = 1; n <= 6; ++n) {
    const Values p = vals({q(1, 3) + q(1, 6 * n), q(1, 3) - q(1, 6 * n), q(1, 3)});
    seq.push_back(expectation(s, p));
  }
  const auto report = convergence_audit(seq, RiskMeasure::choquet(Capacity::from_table(s, target)));
  EXPECT_TRUE(report.pass());
  for (const auto& row : convergence_rows(report)) EXPECT_EQ(row.distance, Real(1));
  EXPECT_EQ(report.discrepancies.size(), 1U);
}
