#include "riskmetric/probes.hpp"

namespace riskmetric::probes {

std::vector<Values> indicators(std::size_t n) {
  std::vector<Values> out;
  if (n <= kMaxExactPoints) {
    for (Mask b = 0; b <= full_mask(n); ++b) {
      Values f(n, Real(0));
      for (std::size_t i = 0; i < n; ++i)
        if ((b >> i) & 1U) f[i] = Real(1);
      out.push_back(std::move(f));
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Values single(n, Real(0));
    single[i] = Real(1);
    Values rest(n, Real(1));
    rest[i] = Real(0);
    out.push_back(std::move(single));
    out.push_back(std::move(rest));
  }
  return out;
}

std::vector<Values> distance_functions(const FiniteMetricSpace& space) {
  std::vector<Values> out;
  for (std::size_t x = 0; x < space.size(); ++x) {
    Values f(space.size());
    for (std::size_t y = 0; y < space.size(); ++y) f[y] = space.distance(y, x);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Values> random_functions(std::size_t n, std::size_t count, Rng& rng, std::int64_t lo, std::int64_t hi,
                                     std::int64_t den) {
  std::vector<Values> out(count, Values(n));
  for (auto& f : out)
    for (auto& v : f) v = rng.grid(lo, hi, den);
  return out;
}

std::vector<Values> lattice_combinations(const std::vector<Values>& base, std::size_t count, Rng& rng) {
  std::vector<Values> out;
  if (base.size() < 2) return out;
  const auto last = static_cast<std::int64_t>(base.size()) - 1;
  for (std::size_t k = 0; k < count; ++k) {
    const auto& a = base[static_cast<std::size_t>(rng.uniform(0, last))];
    const auto& b = base[static_cast<std::size_t>(rng.uniform(0, last))];
    Values hi(a.size());
    Values lo(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      hi[i] = max(a[i], b[i]);
      lo[i] = min(a[i], b[i]);
    }
    out.push_back(std::move(hi));
    out.push_back(std::move(lo));
  }
  return out;
}

Values constant(std::size_t n, const Real& c) { return Values(n, c); }

Values lift_left(std::span<const Real> phi, std::size_t right_size) {
  Values out(phi.size() * right_size);
  for (std::size_t x = 0; x < phi.size(); ++x)
    for (std::size_t y = 0; y < right_size; ++y) out[x * right_size + y] = phi[x];
  return out;
}

Values lift_right(std::span<const Real> psi, std::size_t left_size) {
  Values out(left_size * psi.size());
  for (std::size_t x = 0; x < left_size; ++x)
    for (std::size_t y = 0; y < psi.size(); ++y) out[x * psi.size() + y] = psi[y];
  return out;
}

}  // namespace riskmetric::probes
