#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "riskmetric/capacity.hpp"
#include "riskmetric/space.hpp"
#include "riskmetric/two_point.hpp"

namespace riskmetric {

/// Branch bookkeeping collected while evaluating nested two-point members.
struct EvalTrace {
  bool branch_gap = false;
  bool branch_overlap = false;
};

using Evaluator = std::function<Real(std::span<const Real>)>;

/// An evaluable normed monetary risk measure on a finite space.
///
/// Immutable and cheap to copy (shared representation). Construction does not
/// check the axioms; verify_axioms does.
class RiskMeasure {
 public:
  enum class Kind { Dirac, Choquet, TwoPoint, Mixture, LatticeMax, LatticeMin, BlackBox };

  struct DiracRep {
    std::size_t point;
  };
  struct TwoPointRep {
    TwoPointParams params;
  };
  struct MixtureRep {
    Values weights;
    std::vector<RiskMeasure> components;
  };
  struct LatticeRep {
    std::vector<RiskMeasure> components;
  };
  struct BlackBoxRep {
    Evaluator evaluator;
    std::string name;
  };
  using Rep = std::variant<DiracRep, Capacity, TwoPointRep, MixtureRep, LatticeRep, BlackBoxRep>;

  static RiskMeasure dirac(SpacePtr space, std::size_t point);
  static RiskMeasure choquet(Capacity capacity);
  static RiskMeasure two_point(SpacePtr space, TwoPointParams params);
  /// Weights must be nonnegative and sum to 1 (Error(InvalidParams)).
  static RiskMeasure mixture(Values weights, std::vector<RiskMeasure> components);
  static RiskMeasure lattice_max(std::vector<RiskMeasure> components);
  static RiskMeasure lattice_min(std::vector<RiskMeasure> components);
  static RiskMeasure black_box(SpacePtr space, Evaluator evaluator, std::string name = "black-box");

  Kind kind() const { return kind_; }
  const SpacePtr& space() const { return node_->space; }
  const Rep& rep() const { return node_->rep; }
  const std::string& name() const;

  Real operator()(std::span<const Real> phi) const { return eval(phi, nullptr); }
  Real eval(std::span<const Real> phi, EvalTrace* trace) const;

  /// Capacity of the Choquet representation when one exists (Dirac, Choquet,
  /// mixtures of those); this is the exact tier.
  const std::optional<Capacity>& capacity() const { return node_->capacity; }
  bool is_capacity() const { return node_->capacity.has_value(); }

 private:
  struct Node {
    SpacePtr space;
    Rep rep;
    std::optional<Capacity> capacity;
  };
  RiskMeasure(Kind kind, std::shared_ptr<const Node> node) : kind_(kind), node_(std::move(node)) {}
  static RiskMeasure make(Kind kind, SpacePtr space, Rep rep);

  Kind kind_;
  std::shared_ptr<const Node> node_;
};

const char* to_string(RiskMeasure::Kind kind);

/// Checked entry point; throws SpaceMismatch when phi lives elsewhere.
Real evaluate(const RiskMeasure& mu, const PointFunction& phi);

/// Convenience constructors that land in the capacity tier.
RiskMeasure expectation(const SpacePtr& space, const Values& p);
RiskMeasure var_quantile(const SpacePtr& space, const Values& p, const Real& level);
RiskMeasure cvar(const SpacePtr& space, const Values& p, const Real& level);
RiskMeasure unanimity_min(const SpacePtr& space);
RiskMeasure possibility_max(const SpacePtr& space);

/// A total point map between finite spaces.
struct PointMap {
  SpacePtr source;
  SpacePtr target;
  std::vector<std::size_t> image;

  PointMap(SpacePtr from, SpacePtr to, std::vector<std::size_t> img);
  static PointMap identity(const SpacePtr& space);
  /// Projection of a product space onto the listed factors (in order).
  static PointMap projection(const SpacePtr& product, std::vector<std::size_t> factors);

  Values pull_back(std::span<const Real> phi) const;  // phi o f
  Mask image_of(Mask subset) const;
  Mask preimage_of(Mask subset) const;
};

/// O(f)(mu)(phi) = mu(phi o f). Capacities map as v'(B) = v(f^-1(B)).
RiskMeasure pushforward(const PointMap& f, const RiskMeasure& mu);

}  // namespace riskmetric
