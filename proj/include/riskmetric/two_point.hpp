#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "riskmetric/real.hpp"

namespace riskmetric {

/// Real number or +/- infinity. Only used for the offsets of the two-point family.
struct ExtendedReal {
  int infinity = 0;  // -1, 0 or +1
  Real value;

  static ExtendedReal finite(Real v) { return {0, std::move(v)}; }
  static ExtendedReal neg_inf() { return {-1, Real(0)}; }
  static ExtendedReal pos_inf() { return {+1, Real(0)}; }
  bool is_finite() const { return infinity == 0; }
  std::string to_string() const;

  friend ExtendedReal operator+(const Real& a, const ExtendedReal& b) {
    return b.is_finite() ? finite(a + b.value) : b;
  }
  friend bool operator<(const ExtendedReal& a, const ExtendedReal& b);
  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b);
};

/// Piecewise-linear f with knots sorted by t, extended linearly past the end
/// knots by the adjacent segment's slope (a single knot extends as a constant).
class ShapeFunction {
 public:
  ShapeFunction() : knots_{{Real(0), Real(0)}} {}
  explicit ShapeFunction(std::vector<std::pair<Real, Real>> knots);

  static ShapeFunction zero() { return ShapeFunction(); }
  static ShapeFunction identity() { return ShapeFunction({{Real(0), Real(0)}, {Real(1), Real(1)}}); }

  Real operator()(const Real& t) const;
  const std::vector<std::pair<Real, Real>>& knots() const { return knots_; }

  /// Checks f(0)=0, monotonicity, t <= f <= 0 and concavity on t <= 0,
  /// 0 <= f <= t and convexity on t >= 0. Exact: only knots and slopes are
  /// inspected. Returns an empty string when valid, otherwise the first failure.
  std::string validation_error() const;

 private:
  std::vector<std::pair<Real, Real>> knots_;
};

struct TwoPointParams {
  std::array<Real, 4> alpha;
  std::array<ExtendedReal, 4> lambda;
  ShapeFunction f;

  /// Throws Error(InvalidParams) naming the violated constraint.
  void validate() const;
};

/// Value of the family member plus the branch bookkeeping of the weight term.
struct TwoPointValue {
  Real value;
  int branch = 0;              // 1..5, the printed branch whose value was used
  bool branch_gap = false;     // no printed branch matched; branch 5's value was used
  bool branch_overlap = false; // branches 4 and 5 both matched; branch 4 won
};

/// phi = (phi(0), phi(1)).
TwoPointValue two_point_eval(const TwoPointParams& p, std::span<const Real> phi);

}  // namespace riskmetric
