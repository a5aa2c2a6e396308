#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "riskmetric/measure.hpp"

namespace riskmetric {

/// Two functions that differ only at `point` and are valued differently.
struct SupportEvidence {
  std::size_t point;
  Values phi;
  Values psi;
};

struct SupportResult {
  PointSubset subset;
  bool exact = true;
  std::size_t probes_per_point = 0;
  std::uint64_t seed = 0;
  /// One entry per support point (sampled tier and capacity tier alike).
  std::vector<SupportEvidence> evidence;
};

struct SupportOptions {
  std::size_t probes_per_point = 256;
  std::uint64_t seed = 0;
};

/// Smallest set on whose values mu depends. Exact for Dirac and the capacity
/// tier; otherwise a point is kept iff a seeded probe pair distinguishes it.
SupportResult support(const RiskMeasure& mu, const SupportOptions& options = {});

/// Capacity tier only: the null-point route and the exhaustive carrier search.
PointSubset support_null_points(const RiskMeasure& mu);
PointSubset support_exhaustive(const RiskMeasure& mu);

struct EqualityVerdict {
  enum class Status { Yes, No, Undecided } status = Status::Undecided;
  std::optional<Values> witness;  // separating function for No
  std::size_t probes = 0;
};

const char* to_string(EqualityVerdict::Status status);

struct EqualityOptions {
  std::size_t random_probes = 64;
  std::size_t lattice_probes = 32;
  std::uint64_t seed = 0;
};

/// Yes is only returned by exact tiers (both in the capacity tier).
EqualityVerdict equal_measures(const RiskMeasure& a, const RiskMeasure& b, const EqualityOptions& options = {});

}  // namespace riskmetric
