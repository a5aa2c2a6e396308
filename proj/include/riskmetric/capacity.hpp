#pragma once

#include <span>
#include <vector>

#include "riskmetric/space.hpp"

namespace riskmetric {

/// A recorded failure of v(empty)=0, v(X)=1 or A subset B => v(A) <= v(B).
struct CapacityViolation {
  enum class Kind { EmptyNotZero, FullNotOne, NotMonotone } kind;
  Mask smaller = 0;  // for NotMonotone: v(smaller) > v(larger)
  Mask larger = 0;
};

/// Set function over all 2^n subsets of a finite space, indexed by bit mask.
class Capacity {
 public:
  /// Validates normalization and monotonicity; throws Error(InvalidParams).
  static Capacity from_table(SpacePtr space, Values table);
  /// Only checks the table size. Used for inputs that are audited afterwards.
  static Capacity unchecked(SpacePtr space, Values table);

  /// Additive capacity v(B) = p(B).
  static Capacity expectation(const SpacePtr& space, const Values& p);
  /// v(B) = 1 iff p(B) > 1 - level.
  static Capacity var_quantile(const SpacePtr& space, const Values& p, const Real& level);
  /// Distortion v(B) = min(p(B) / (1 - level), 1).
  static Capacity cvar(const SpacePtr& space, const Values& p, const Real& level);
  /// v(B) = 1 iff B = X (the Choquet integral is the minimum).
  static Capacity unanimity(const SpacePtr& space);
  /// v(B) = 1 iff B is nonempty (the Choquet integral is the maximum).
  static Capacity possibility(const SpacePtr& space);

  const SpacePtr& space() const { return space_; }
  std::size_t points() const { return space_->size(); }
  const Real& operator[](Mask subset) const { return table_[subset]; }
  const Values& table() const { return table_; }

  /// Single-step covers B -> B + {x} only; that suffices for monotonicity.
  std::vector<CapacityViolation> violations(std::size_t limit = 16) const;
  bool is_valid() const { return violations(1).empty(); }

  friend bool operator==(const Capacity& a, const Capacity& b) { return a.table_ == b.table_; }

 private:
  Capacity(SpacePtr space, Values table);

  SpacePtr space_;
  Values table_;
};

/// Decreasing-rearrangement Choquet sum. Ties are broken by point index.
Real choquet_eval(const Capacity& v, std::span<const Real> phi);
Real choquet_eval(const Capacity& v, const PointFunction& phi);

/// Support of a capacity: complement of its null points, verified by the
/// carrier test v(S) = v(S n A) for every S.
Mask capacity_support_null_points(const Capacity& v);
/// Smallest carrier found by scanning candidate sets in increasing size.
Mask capacity_support_exhaustive(const Capacity& v);
bool is_carrier(const Capacity& v, Mask candidate);

}  // namespace riskmetric
