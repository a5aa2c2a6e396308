#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riskmetric/bottleneck.hpp"
#include "riskmetric/io.hpp"
#include "riskmetric/rng.hpp"

namespace riskmetric {

/// A failed check with enough data to reproduce it without the ensemble.
struct AuditFailure {
  std::string check;
  std::string detail;
  /// True when every measure involved is in the capacity tier.
  bool capacity_tier = false;
  io::Json payload;
};

struct AuditReport {
  std::string suite;
  std::size_t instances = 0;
  std::vector<AuditFailure> failures;
  /// Findings that are reported but do not fail the suite.
  std::vector<AuditFailure> discrepancies;
  io::Json summary = io::Json::object();

  bool pass() const { return failures.empty(); }
};

io::Json to_json(const AuditReport& report);

/// Recomputes a failure (or discrepancy) from its payload. Returns true when
/// the recorded violation is reproduced.
bool reverify(const AuditFailure& failure);

struct EnsembleSpec {
  std::size_t count = 100;
  std::uint64_t seed = 0;
  /// Members built with lattice max/min (sampled tier).
  std::size_t lattice = 6;
  /// Two-point family members (2-point spaces only).
  std::size_t two_point = 12;
};

/// Seeded ensemble: Dirac measures, unanimity and possibility, random monotone
/// capacities, expectations, mixtures, lattice combinations, repeated members,
/// and on 2-point spaces two-point family members that pass the axiom gate.
std::vector<RiskMeasure> generate_ensemble(const SpacePtr& space, const EnsembleSpec& spec);

/// Random monotone capacity with values on the grid k/den.
Capacity random_capacity(const SpacePtr& space, Rng& rng, std::int64_t den = 12);
/// Random valid two-point family parameters: alpha on the grid k/4, offsets
/// that are 0, +/-inf or on a half-integer grid, and one of a few shapes.
TwoPointParams random_two_point(Rng& rng);
/// Random probability vector with weights on the grid k/den (some zero).
Values random_probability(std::size_t n, Rng& rng, std::int64_t den = 12);

struct MetricAuditOptions {
  DistanceOptions distance;
  /// Verify the witness of every matrix entry over the probe grid.
  bool verify_witnesses = true;
  CouplingProbeOptions witness_probes{16, 0, 4, 4};
  std::size_t lipschitz_random_probes = 8;
  EqualityOptions equality;
};

/// Symmetry, identity of indiscernibles against equal_measures, triangle
/// inequality, diameter bound and attainment, Lipschitz control and witness
/// optimality over the distance matrix of `measures`.
AuditReport metric_axiom_audit(const std::vector<RiskMeasure>& measures, const MetricAuditOptions& options = {});
AuditReport metric_axiom_audit(const SpacePtr& space, const EnsembleSpec& spec, const MetricAuditOptions& options = {});

struct ConvergenceRow {
  std::size_t index;
  Real gap;        // max over probes |mu_n(phi) - mu_0(phi)|
  Real distance;   // rho_O(mu_n, mu_0)
  Real hausdorff;  // between the supports
  bool lipschitz = true;
};

struct ConvergenceOptions {
  DistanceOptions distance;
  std::size_t random_probes = 32;
  std::uint64_t seed = 0;
  SupportOptions support;
};

/// The report summary holds the rows; a flagged discrepancy is recorded when
/// the pointwise gaps shrink while the distances or support gaps do not.
AuditReport convergence_audit(const std::vector<RiskMeasure>& sequence, const RiskMeasure& limit,
                              const ConvergenceOptions& options = {});
std::vector<ConvergenceRow> convergence_rows(const AuditReport& report);

/// (1 - 1/k) delta_a + (1/k) delta_c for k = 1..count.
std::vector<RiskMeasure> mixture_sequence(const SpacePtr& space, std::size_t a, std::size_t c, std::size_t count);

/// Heuristic used for the convergence flags: the last term is at most a
/// quarter of the first (or every term is zero).
bool tends_to_zero(const std::vector<Real>& seq);

}  // namespace riskmetric
