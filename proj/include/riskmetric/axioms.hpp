#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskmetric/measure.hpp"

namespace riskmetric {

enum class Axiom { Monotonicity, TranslationInvariance, Normedness, Marginal, SupportConfinement };
const char* to_string(Axiom axiom);

/// One failed check. `functions` and `values` are enough to re-evaluate it:
///  - Monotonicity: functions = {phi, psi} with phi <= psi, values = {mu(phi), mu(psi)}
///  - TranslationInvariance: functions = {phi}, values = {c, mu(phi), mu(phi + c)}
///  - Normedness: functions = {c * 1}, values = {c, mu(c * 1)}
///  - Marginal / SupportConfinement: see verify_coupling.
struct Violation {
  Axiom axiom;
  std::vector<Values> functions;
  Values values;
  bool branch_gap = false;
  bool branch_overlap = false;
  /// Set when the failure is a capacity-table entry (exact tier): {A, B} with
  /// v(A) > v(B) for A subset B, or {0, 0} / {X, X} for a normalization entry.
  std::optional<std::pair<Mask, Mask>> table_entries;
  std::string detail;
};

struct AxiomReport {
  enum class Method { Exact, Sampled };

  bool pass = true;
  std::vector<Violation> violations;
  Method method = Method::Exact;
  std::uint64_t seed = 0;
  std::size_t count = 0;

  void add(Violation v) {
    pass = false;
    violations.push_back(std::move(v));
  }
};

struct AxiomOptions {
  enum class Mode { Exact, Sampled } mode = Mode::Exact;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::size_t max_violations = 8;
};

/// Exact mode is used for the capacity tier (Dirac, Choquet, mixtures of
/// those); every other representation is sampled, whatever mode was requested.
AxiomReport verify_axioms(const RiskMeasure& mu, const AxiomOptions& options = {});

/// Re-evaluates a recorded Monotonicity/Translation/Normedness violation.
bool reverify(const RiskMeasure& mu, const Violation& violation);

}  // namespace riskmetric
