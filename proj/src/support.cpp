#include "riskmetric/support.hpp"

#include "riskmetric/probes.hpp"

namespace riskmetric {

const char* to_string(EqualityVerdict::Status status) {
  switch (status) {
    case EqualityVerdict::Status::Yes: return "yes";
    case EqualityVerdict::Status::No: return "no";
    case EqualityVerdict::Status::Undecided: return "undecided";
  }
  return "unknown";
}

namespace {

Values indicator(std::size_t n, Mask b) {
  Values f(n, Real(0));
  for (std::size_t i = 0; i < n; ++i)
    if ((b >> i) & 1U) f[i] = Real(1);
  return f;
}

std::optional<SupportEvidence> capacity_evidence(const Capacity& v, std::size_t x) {
  const Mask bit = Mask{1} << x;
  for (Mask s = 0; s <= full_mask(v.points()); ++s) {
    if (s & bit) continue;
    if (!approx_eq(v[s], v[s | bit])) {
      // Choquet of an indicator is the capacity value, except 0 for the empty set.
      if (s == 0 && !approx_eq(v[bit], Real(0))) return SupportEvidence{x, indicator(v.points(), 0), indicator(v.points(), bit)};
      if (s != 0) return SupportEvidence{x, indicator(v.points(), s), indicator(v.points(), s | bit)};
    }
  }
  return std::nullopt;
}

}  // namespace

PointSubset support_null_points(const RiskMeasure& mu) {
  if (!mu.is_capacity()) throw Error(ErrorKind::InvalidParams, "support_null_points needs the capacity tier");
  return {mu.space(), capacity_support_null_points(*mu.capacity())};
}

PointSubset support_exhaustive(const RiskMeasure& mu) {
  if (!mu.is_capacity()) throw Error(ErrorKind::InvalidParams, "support_exhaustive needs the capacity tier");
  return {mu.space(), capacity_support_exhaustive(*mu.capacity())};
}

SupportResult support(const RiskMeasure& mu, const SupportOptions& options) {
  SupportResult out;
  out.subset.space = mu.space();
  const std::size_t n = mu.space()->size();

  if (mu.kind() == RiskMeasure::Kind::Dirac) {
    const std::size_t x = std::get<RiskMeasure::DiracRep>(mu.rep()).point;
    out.subset.mask = Mask{1} << x;
    Values psi(n, Real(0));
    psi[x] = Real(1);
    out.evidence.push_back({x, Values(n, Real(0)), std::move(psi)});
    return out;
  }
  if (mu.is_capacity()) {
    const auto& v = *mu.capacity();
    out.subset.mask = capacity_support_null_points(v);
    for (std::size_t x = 0; x < n; ++x) {
      if (!out.subset.contains(x)) continue;
      if (auto ev = capacity_evidence(v, x)) out.evidence.push_back(std::move(*ev));
    }
    return out;
  }

  out.exact = false;
  out.probes_per_point = options.probes_per_point;
  out.seed = options.seed;
  for (std::size_t x = 0; x < n; ++x) {
    auto rng = Rng::stream(options.seed, "support", x);
    for (std::size_t k = 0; k < options.probes_per_point; ++k) {
      Values phi(n);
      if (k % 4 == 0 && n <= 62) {
        const Mask s = static_cast<Mask>(rng.next()) & full_mask(n) & ~(Mask{1} << x);
        phi = indicator(n, s);
      } else {
        for (auto& v : phi) v = rng.grid(-4, 4, 1);
      }
      Values psi = phi;
      psi[x] = k % 4 == 0 ? Real(1) : rng.grid(-4, 4, 1);
      if (psi[x] == phi[x]) psi[x] = phi[x] + Real(1);
      if (!approx_eq(mu(phi), mu(psi))) {
        out.subset.mask |= Mask{1} << x;
        out.evidence.push_back({x, std::move(phi), std::move(psi)});
        break;
      }
    }
  }
  return out;
}

EqualityVerdict equal_measures(const RiskMeasure& a, const RiskMeasure& b, const EqualityOptions& options) {
  require_same_space(a.space(), b.space(), "equal_measures");
  EqualityVerdict out;
  const std::size_t n = a.space()->size();
  if (a.is_capacity() && b.is_capacity()) {
    const auto& va = *a.capacity();
    const auto& vb = *b.capacity();
    // The value on the empty set never enters a Choquet sum.
    for (Mask s = 1; s <= full_mask(n); ++s) {
      ++out.probes;
      if (!approx_eq(va[s], vb[s])) {
        out.status = EqualityVerdict::Status::No;
        out.witness = indicator(n, s);
        return out;
      }
    }
    out.status = EqualityVerdict::Status::Yes;
    return out;
  }

  auto rng = Rng::stream(options.seed, "equal_measures");
  std::vector<Values> grid = probes::indicators(n);
  for (auto& f : probes::distance_functions(*a.space())) grid.push_back(std::move(f));
  for (auto& f : probes::random_functions(n, options.random_probes, rng, -4, 4, 2)) grid.push_back(std::move(f));
  for (auto& f : probes::lattice_combinations(grid, options.lattice_probes, rng)) grid.push_back(std::move(f));
  for (const auto& phi : grid) {
    ++out.probes;
    if (!approx_eq(a(phi), b(phi))) {
      out.status = EqualityVerdict::Status::No;
      out.witness = phi;
      return out;
    }
  }
  out.status = EqualityVerdict::Status::Undecided;
  return out;
}

}  // namespace riskmetric
