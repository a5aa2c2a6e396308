#include "riskmetric/two_point.hpp"

#include <algorithm>

#include "riskmetric/error.hpp"

namespace riskmetric {

std::string ExtendedReal::to_string() const {
  if (infinity < 0) return "-inf";
  if (infinity > 0) return "+inf";
  return value.to_string();
}

bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinity != b.infinity) return a.infinity < b.infinity;
  if (a.infinity != 0) return false;
  return a.value < b.value;
}

bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.infinity != b.infinity) return false;
  return a.infinity != 0 || a.value == b.value;
}

namespace {

bool ext_le(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_finite() && b.is_finite()) return approx_le(a.value, b.value);
  return !(b < a);
}

Real ext_max_finite(const ExtendedReal& a, const ExtendedReal& b) {
  const ExtendedReal& m = (a < b) ? b : a;
  if (!m.is_finite()) throw Error(ErrorKind::InvalidParams, "max term is unbounded");
  return m.value;
}

Real ext_min_finite(const ExtendedReal& a, const ExtendedReal& b) {
  const ExtendedReal& m = (b < a) ? b : a;
  if (!m.is_finite()) throw Error(ErrorKind::InvalidParams, "min term is unbounded");
  return m.value;
}

}  // namespace

ShapeFunction::ShapeFunction(std::vector<std::pair<Real, Real>> knots) : knots_(std::move(knots)) {
  if (knots_.empty()) throw Error(ErrorKind::InvalidParams, "shape function needs at least one knot");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i - 1].first < knots_[i].first)) {
      throw Error(ErrorKind::InvalidParams, "shape function knots must be strictly increasing in t");
    }
  }
}

Real ShapeFunction::operator()(const Real& t) const {
  if (knots_.size() == 1) return knots_.front().second;
  auto segment = [&](std::size_t i) {
    const auto& [t0, y0] = knots_[i];
    const auto& [t1, y1] = knots_[i + 1];
    return y0 + (y1 - y0) / (t1 - t0) * (t - t0);
  };
  if (t <= knots_.front().first) return segment(0);
  if (t >= knots_.back().first) return segment(knots_.size() - 2);
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                                   [](const Real& v, const std::pair<Real, Real>& k) { return v < k.first; });
  return segment(static_cast<std::size_t>(it - knots_.begin()) - 1);
}

std::string ShapeFunction::validation_error() const {
  std::vector<Real> points;
  for (const auto& k : knots_) points.push_back(k.first);
  if (std::none_of(points.begin(), points.end(), [](const Real& t) { return t.is_zero(); })) {
    points.push_back(Real(0));
    std::sort(points.begin(), points.end());
  }
  if (!approx_eq((*this)(Real(0)), Real(0))) return "f(0) != 0";

  std::vector<Real> values;
  for (const auto& t : points) values.push_back((*this)(t));
  const std::size_t m = points.size();
  // slopes[0] is the left extension, slopes[m] the right extension.
  std::vector<Real> slopes(m + 1, Real(0));
  for (std::size_t i = 1; i < m; ++i) slopes[i] = (values[i] - values[i - 1]) / (points[i] - points[i - 1]);
  if (knots_.size() >= 2) {
    slopes[0] = (knots_[1].second - knots_[0].second) / (knots_[1].first - knots_[0].first);
    const std::size_t l = knots_.size() - 1;
    slopes[m] = (knots_[l].second - knots_[l - 1].second) / (knots_[l].first - knots_[l - 1].first);
  }

  for (const auto& s : slopes)
    if (s < Real(0) && !approx_le(Real(0), s)) return "f is not nondecreasing";
  for (std::size_t i = 0; i < m; ++i) {
    const Real& t = points[i];
    const Real& y = values[i];
    if (t <= Real(0) && !(approx_le(t, y) && approx_le(y, Real(0)))) return "t <= f(t) <= 0 fails at t=" + t.to_string();
    if (t >= Real(0) && !(approx_le(Real(0), y) && approx_le(y, t))) return "0 <= f(t) <= t fails at t=" + t.to_string();
  }
  if (!approx_le(slopes[0], Real(1))) return "f(t) < t as t -> -inf";
  if (!approx_le(slopes[m], Real(1))) return "f(t) > t as t -> +inf";
  // Interval i (1..m-1) spans [points[i-1], points[i]].
  for (std::size_t i = 1; i < m; ++i) {
    if (points[i] <= Real(0) && !approx_le(slopes[i], slopes[i - 1])) return "f is not concave on t <= 0";
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (points[i - 1] >= Real(0) && !approx_le(slopes[i], slopes[i + 1])) return "f is not convex on t >= 0";
  }
  return {};
}

void TwoPointParams::validate() const {
  Real sum(0);
  for (const auto& a : alpha) {
    if (a < Real(0)) throw Error(ErrorKind::InvalidParams, "alpha weights must be nonnegative");
    sum += a;
  }
  if (!approx_eq(sum, Real(1))) throw Error(ErrorKind::InvalidParams, "alpha weights must sum to 1");
  for (int i : {0, 1}) {
    const auto& l = lambda[i];
    if (l.infinity > 0 || (l.is_finite() && !approx_le(l.value, Real(0)))) {
      throw Error(ErrorKind::InvalidParams, "lambda1, lambda2 must lie in [-inf, 0]");
    }
  }
  for (int i : {2, 3}) {
    const auto& l = lambda[i];
    if (l.infinity < 0 || (l.is_finite() && !approx_le(Real(0), l.value))) {
      throw Error(ErrorKind::InvalidParams, "lambda3, lambda4 must lie in [0, +inf]");
    }
  }
  const auto is_zero = [](const ExtendedReal& l) { return l.is_finite() && approx_eq(l.value, Real(0)); };
  if (!is_zero(lambda[0]) && !is_zero(lambda[1])) throw Error(ErrorKind::InvalidParams, "max{lambda1, lambda2} must be 0");
  if (!is_zero(lambda[2]) && !is_zero(lambda[3])) throw Error(ErrorKind::InvalidParams, "min{lambda3, lambda4} must be 0");
  if (const auto err = f.validation_error(); !err.empty()) throw Error(ErrorKind::InvalidParams, "shape function: " + err);
}

TwoPointValue two_point_eval(const TwoPointParams& p, std::span<const Real> phi) {
  if (phi.size() != 2) throw Error(ErrorKind::SpaceMismatch, "two-point family lives on a 2-point space");
  const auto& [a1, a2, a3, a4] = p.alpha;
  const Real& x0 = phi[0];
  const Real& x1 = phi[1];
  const ExtendedReal m0 = x0 + p.lambda[0];
  const ExtendedReal m1 = x1 + p.lambda[1];
  const ExtendedReal n0 = x0 + p.lambda[2];
  const ExtendedReal n1 = x1 + p.lambda[3];

  TwoPointValue out;
  Real weight;
  if (a3.is_zero() && a4.is_zero()) {
    out.branch = 1;
    weight = min(a1, a2);
  } else {
    const bool first_ge = ext_le(m1, m0);
    const bool second_le = ext_le(n0, n1);
    const bool second_ge = ext_le(n1, n0);
    const bool second_gt = !second_le;
    const bool b2 = first_ge && second_le;
    const bool b3 = first_ge && second_gt;
    const bool b4 = !first_ge && second_ge;
    const bool b5 = !first_ge && second_gt;
    if (b2) {
      out.branch = 2;
      weight = min(a1 + a3 + a4, a2);
    } else if (b3) {
      out.branch = 3;
      weight = min(a1 + a3, a2 + a4);
    } else if (b4) {
      out.branch = 4;
      out.branch_overlap = b5;
      weight = min(a1 + a4, a2 + a3);
    } else {
      out.branch = 5;
      out.branch_gap = !b5;
      weight = min(a1, a2 + a3 + a4);
    }
  }

  Real value = a1 * x0 + a2 * x1;
  if (!a3.is_zero()) value += a3 * ext_max_finite(m0, m1);
  if (!a4.is_zero()) value += a4 * ext_min_finite(n0, n1);
  if (!weight.is_zero()) value += weight * p.f(x1 - x0);
  out.value = value;
  return out;
}

}  // namespace riskmetric
