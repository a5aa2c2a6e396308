#include "riskmetric/capacity.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace riskmetric {
namespace {

void check_size(const SpacePtr& space) {
  const std::size_t cap = space->is_exact() ? kMaxExactPoints : kMaxFloatPoints;
  if (space->size() > cap) {
    throw Error(ErrorKind::TooManyPoints, "capacity tables are limited to " + std::to_string(cap) + " points");
  }
}

Values subset_sums(const SpacePtr& space, const Values& p) {
  if (p.size() != space->size()) throw Error(ErrorKind::SpaceMismatch, "probability vector length");
  const std::size_t n = space->size();
  Values sums(std::size_t{1} << n, Real(0));
  for (Mask b = 1; b < sums.size(); ++b) {
    const auto low = static_cast<std::size_t>(std::countr_zero(b));
    sums[b] = sums[b & (b - 1)] + p[low];
  }
  return sums;
}

}  // namespace

Capacity::Capacity(SpacePtr space, Values table) : space_(std::move(space)), table_(std::move(table)) {
  check_size(space_);
  if (table_.size() != (std::size_t{1} << space_->size())) {
    throw Error(ErrorKind::InvalidParams, "capacity table must have 2^n entries");
  }
}

Capacity Capacity::from_table(SpacePtr space, Values table) {
  Capacity v(std::move(space), std::move(table));
  if (!v.is_valid()) {
    const auto bad = v.violations(1).front();
    throw Error(ErrorKind::InvalidParams, "capacity violates its axioms at subsets " + std::to_string(bad.smaller) +
                                              "/" + std::to_string(bad.larger));
  }
  return v;
}

Capacity Capacity::unchecked(SpacePtr space, Values table) { return Capacity(std::move(space), std::move(table)); }

Capacity Capacity::expectation(const SpacePtr& space, const Values& p) {
  return from_table(space, subset_sums(space, p));
}

Capacity Capacity::var_quantile(const SpacePtr& space, const Values& p, const Real& level) {
  auto sums = subset_sums(space, p);
  const Real threshold = Real(1) - level;
  for (auto& s : sums) s = approx_lt(threshold, s) ? Real(1) : Real(0);
  sums.back() = Real(1);
  return from_table(space, std::move(sums));
}

Capacity Capacity::cvar(const SpacePtr& space, const Values& p, const Real& level) {
  if (!approx_lt(level, Real(1)) || level < Real(0)) {
    throw Error(ErrorKind::InvalidParams, "cvar level must lie in [0, 1)");
  }
  auto sums = subset_sums(space, p);
  const Real scale = Real(1) - level;
  for (auto& s : sums) s = min(s / scale, Real(1));
  sums.back() = Real(1);
  return from_table(space, std::move(sums));
}

Capacity Capacity::unanimity(const SpacePtr& space) {
  check_size(space);
  Values table(std::size_t{1} << space->size(), Real(0));
  table.back() = Real(1);
  return from_table(space, std::move(table));
}

Capacity Capacity::possibility(const SpacePtr& space) {
  check_size(space);
  Values table(std::size_t{1} << space->size(), Real(1));
  table.front() = Real(0);
  return from_table(space, std::move(table));
}

std::vector<CapacityViolation> Capacity::violations(std::size_t limit) const {
  std::vector<CapacityViolation> out;
  const std::size_t n = points();
  const Mask full = full_mask(n);
  if (!approx_eq(table_[0], Real(0))) out.push_back({CapacityViolation::Kind::EmptyNotZero, 0, 0});
  if (!approx_eq(table_[full], Real(1))) out.push_back({CapacityViolation::Kind::FullNotOne, full, full});
  for (Mask b = 0; b <= full && out.size() < limit; ++b) {
    for (std::size_t x = 0; x < n && out.size() < limit; ++x) {
      const Mask bx = b | (Mask{1} << x);
      if (bx == b) continue;
      if (!approx_le(table_[b], table_[bx])) out.push_back({CapacityViolation::Kind::NotMonotone, b, bx});
    }
  }
  if (out.size() > limit) out.resize(limit);
  return out;
}

Real choquet_eval(const Capacity& v, std::span<const Real> phi) {
  const std::size_t n = v.points();
  if (phi.size() != n) throw Error(ErrorKind::SpaceMismatch, "choquet_eval: function length");
  std::array<std::size_t, 64> order{};
  std::iota(order.begin(), order.begin() + n, std::size_t{0});
  std::stable_sort(order.begin(), order.begin() + n,
                   [&](std::size_t a, std::size_t b) { return phi[b] < phi[a]; });
  Real total(0);
  Mask top = 0;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    top |= Mask{1} << order[r];
    const Real step = phi[order[r]] - phi[order[r + 1]];
    if (!step.is_zero()) total += step * v[top];
  }
  return total + phi[order[n - 1]] * v[full_mask(n)];
}

Real choquet_eval(const Capacity& v, const PointFunction& phi) {
  require_same_space(v.space(), phi.space, "choquet_eval");
  return choquet_eval(v, std::span<const Real>(phi.values));
}

bool is_carrier(const Capacity& v, Mask candidate) {
  const Mask full = full_mask(v.points());
  for (Mask s = 0; s <= full; ++s) {
    if (!approx_eq(v[s], v[s & candidate])) return false;
  }
  return true;
}

Mask capacity_support_null_points(const Capacity& v) {
  const std::size_t n = v.points();
  const Mask full = full_mask(n);
  Mask support = full;
  for (std::size_t x = 0; x < n; ++x) {
    const Mask bit = Mask{1} << x;
    bool null = true;
    for (Mask s = 0; s <= full && null; ++s) {
      if (s & bit) continue;
      null = approx_eq(v[s], v[s | bit]);
    }
    if (null) support &= ~bit;
  }
  if (!is_carrier(v, support)) return capacity_support_exhaustive(v);
  return support;
}

Mask capacity_support_exhaustive(const Capacity& v) {
  const std::size_t n = v.points();
  const Mask full = full_mask(n);
  for (std::size_t size = 0; size <= n; ++size) {
    for (Mask a = 0; a <= full; ++a) {
      if (static_cast<std::size_t>(std::popcount(a)) != size) continue;
      if (is_carrier(v, a)) return a;
    }
  }
  return full;
}

}  // namespace riskmetric
