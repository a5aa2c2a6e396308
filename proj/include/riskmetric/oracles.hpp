#pragma once

#include <cstdint>

#include "riskmetric/audit.hpp"
#include "riskmetric/space.hpp"

namespace riskmetric::oracles {

/// Nonnegative weights summing to 1.
struct ProbabilityVector {
  SpacePtr space;
  Values weights;

  /// Throws Error(InvalidParams) on negative weights or a sum other than 1.
  ProbabilityVector(SpacePtr s, Values w);
};

/// Hall condition on every subset A of the right space:
/// q(A) <= p({x : S(x) meets A}).
bool strassen_exhaustive(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s);
/// Max-flow source -> x (cap p(x)) -> y along S -> sink (cap q(y)) saturates.
bool strassen_flow(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s);
/// Both methods; throws std::logic_error if they disagree.
bool strassen_feasible(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s);

/// Smallest ladder level t with a coupling of p and q on {dist <= t}.
Real winf_distance(const ProbabilityVector& p, const ProbabilityVector& q);

struct CrossCheckOptions {
  std::size_t additive_instances = 200;
  std::size_t choquet_instances = 200;
  std::size_t dirac_instances = 100;
  std::size_t min_points = 2;
  std::size_t max_points = 5;
  /// Refutation budget of the sampled attempt on exact-infeasible instances.
  std::size_t refutation_samples = 512;
  std::uint64_t seed = 0;
};

/// Exact-tier verdicts against the Hall check, the flow check, Dirac
/// membership, witness verification (feasible) and a budgeted sampled witness
/// attempt (infeasible). Every disagreement is a failure with a payload.
AuditReport criterion_cross_check(const CrossCheckOptions& options = {});

bool reverify_cross_check(const AuditFailure& failure);

/// Seeded random metric: distinct integer positions on a line, or the
/// shortest-path metric of a random weighted cycle.
SpacePtr random_space(std::size_t n, Rng& rng);
/// Each pair included with probability num/den; the result may be empty.
Relation random_relation(const SpacePtr& left, const SpacePtr& right, Rng& rng, std::int64_t num = 1, std::int64_t den = 2);

}  // namespace riskmetric::oracles
