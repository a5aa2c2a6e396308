#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "riskmetric/axioms.hpp"
#include "riskmetric/measure.hpp"
#include "riskmetric/support.hpp"

namespace riskmetric {

enum class Side { Left, Right };

/// Left: x -> min{chi(x, y) : (x, y) in S}. Right: y -> min{chi(x, y) : (x, y) in S}.
/// chi is indexed like the product left x right. Throws EmptySection for a
/// point with an empty section.
Values min_envelope(std::span<const Real> chi, const Relation& s, Side side);
/// Same, but points with an empty section receive `fill`.
Values min_envelope(std::span<const Real> chi, const Relation& s, Side side, const Real& fill);
Values max_envelope(std::span<const Real> chi, const Relation& s, Side side, const Real& fill);

/// Admissible risk measure on left x right built from its two marginals.
///
/// The lower extension evaluates chi -> max(mu1(L chi), mu2(R chi)) with the
/// min envelopes L, R over S; the upper extension uses max envelopes and min.
/// Both read chi only on S (points outside a projection are filled with the
/// max, respectively min, of chi over S).
class CouplingWitness {
 public:
  enum class Formula { LowerExtension, UpperExtension };

  CouplingWitness(RiskMeasure left, RiskMeasure right, Relation support, Formula formula = Formula::LowerExtension);

  const SpacePtr& product_space() const { return product_; }
  const Relation& declared_support() const { return support_; }
  const RiskMeasure& left_marginal() const { return left_; }
  const RiskMeasure& right_marginal() const { return right_; }
  Formula formula() const { return formula_; }
  const char* formula_tag() const;

  Real operator()(std::span<const Real> chi) const;
  /// Black-box view on the product space.
  RiskMeasure as_measure() const;

 private:
  RiskMeasure left_;
  RiskMeasure right_;
  Relation support_;
  Formula formula_;
  SpacePtr product_;
};

/// Evidence that no coupling is supported in S.
struct Certificate {
  enum class Kind {
    /// mu_side(phi) != mu_side(psi) although phi, psi agree on pi_side(S).
    Support,
    /// mu1(L_S(psi o pi2)) > mu2(psi); psi lives on the right space.
    LeftEnvelope,
    /// mu2(R_S(phi o pi1)) > mu1(phi); phi lives on the left space.
    RightEnvelope,
  };
  Kind kind;
  Side side = Side::Left;
  std::size_t point = 0;
  Values phi;
  Values psi;
  Real lhs;
  Real rhs;
};

const char* to_string(Certificate::Kind kind);

/// Re-evaluates a certificate against the marginals from scratch.
bool reverify(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s, const Certificate& certificate);

struct FeasibilityVerdict {
  enum class Status { Feasible, Infeasible, Unknown };
  enum class Tier { ExactChoquet, Dirac, RefutationSampled, WitnessFound };

  Status status = Status::Unknown;
  Tier tier = Tier::RefutationSampled;
  std::optional<Certificate> certificate;
  std::optional<CouplingWitness> witness;

  bool feasible() const { return status == Status::Feasible; }
  bool infeasible() const { return status == Status::Infeasible; }
};

const char* to_string(FeasibilityVerdict::Status status);
const char* to_string(FeasibilityVerdict::Tier tier);

struct CouplingProbeOptions {
  std::size_t random_probes = 64;
  std::uint64_t seed = 0;
  std::size_t max_violations = 8;
  /// Product spaces up to this size are probed with the indicator of every
  /// subset; larger ones with point indicators and their complements.
  std::size_t all_subsets_up_to = 9;
};

struct AdmissibilityOptions {
  /// Skip the exact tiers (used to cross-check them).
  bool force_sampled = false;
  /// Build and verify the lower extension when no refutation is found.
  bool attempt_witness = true;
  /// Attach the (unverified) lower extension to exact-tier feasible verdicts.
  bool attach_witness = true;
  std::size_t refutation_probes = 64;
  std::uint64_t seed = 0;
  SupportOptions support;
  CouplingProbeOptions probes;
};

/// Is there a normed monetary risk measure on left x right with marginals
/// mu1, mu2 whose support lies in S?
///
/// Decided through: support(mu_i) inside pi_i(S), mu1(L_S psi) <= mu2(psi)
/// for every psi and the mirrored inequality. The capacity tier checks these on
/// indicators of all subsets, which is exact; other tiers refute by probing and
/// confirm by exhibiting a verified witness.
FeasibilityVerdict admissible(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                              const AdmissibilityOptions& options = {});

/// Throws EmptySection when a marginal's support leaves the projection of S.
CouplingWitness lower_coupling(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                               const SupportOptions& support_options = {});
CouplingWitness upper_coupling(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                               const SupportOptions& support_options = {});

/// Probe-grid check that xi is a normed monetary risk measure on left x right
/// with the given marginals that only reads values on S.
AxiomReport verify_coupling(const RiskMeasure& xi, const RiskMeasure& mu1, const RiskMeasure& mu2,
                            const Relation& s, const CouplingProbeOptions& options = {});
AxiomReport verify_coupling(const CouplingWitness& witness, const CouplingProbeOptions& options = {});

/// Checks the shared middle marginal of two measures on X1 x X2 and X2 x X3.
EqualityVerdict glue_marginal_check(const RiskMeasure& mu12, const RiskMeasure& mu23,
                                    const EqualityOptions& options = {});

/// A measure on X1 x X2 x X3 projecting to mu12 and mu23:
/// chi -> max(mu12(min over x3 of chi), mu23(min over x1 of chi)).
/// Two Dirac inputs glue to the Dirac at the joined point.
/// Throws MarginalMismatch when the middle marginals are separated.
RiskMeasure glue(const RiskMeasure& mu12, const RiskMeasure& mu23, const EqualityOptions& options = {});

/// Probe-grid check of both projection identities of a glued measure.
AxiomReport verify_glue(const RiskMeasure& xi, const RiskMeasure& mu12, const RiskMeasure& mu23,
                        const CouplingProbeOptions& options = {});

}  // namespace riskmetric
