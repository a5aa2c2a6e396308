#pragma once

#include <optional>
#include <vector>

#include "riskmetric/coupling.hpp"

namespace riskmetric {

struct LadderStep {
  Real threshold;
  FeasibilityVerdict::Status status;
  FeasibilityVerdict::Tier tier;
  /// Not evaluated: feasibility at a smaller threshold carries over.
  bool implied = false;
};

struct DistanceResult {
  enum class Certification { Exact, Bounds };

  /// Smallest feasible level; equals `upper`.
  Real value;
  Real lower;
  Real upper;
  Certification certification = Certification::Exact;
  std::vector<LadderStep> ladder;
  /// Lower extension over the sublevel relation at `value`.
  std::optional<CouplingWitness> witness;

  bool exact() const { return certification == Certification::Exact; }
};

const char* to_string(DistanceResult::Certification certification);

struct DistanceOptions {
  AdmissibilityOptions admissibility;
  /// Gate both inputs through verify_axioms (AxiomFailure on failure).
  bool check_axioms = true;
  AxiomOptions axioms;
  /// Intersect each sublevel relation with support(mu1) x support(mu2).
  bool restrict_to_supports = false;
};

/// Bottleneck coupling distance: the smallest level t of the distance
/// ladder such that some coupling of mu1 and mu2 lives on {dist <= t}.
DistanceResult rho_O(const RiskMeasure& mu1, const RiskMeasure& mu2, const DistanceOptions& options = {});

/// All m x m entries (both triangles and the diagonal are computed, so
/// symmetry is an observation rather than an assumption).
using DistanceMatrix = std::vector<std::vector<DistanceResult>>;

/// Parallel over entries. The axiom gate runs once per measure.
DistanceMatrix distance_matrix(const std::vector<RiskMeasure>& measures, const DistanceOptions& options = {});
/// Same computation in a single loop; the reference for the parallel version.
DistanceMatrix distance_matrix_serial(const std::vector<RiskMeasure>& measures, const DistanceOptions& options = {});

/// Throws Error(AxiomFailure) naming the measure index when verify_axioms fails.
void require_axioms(const RiskMeasure& mu, const AxiomOptions& options, std::size_t index);

}  // namespace riskmetric
