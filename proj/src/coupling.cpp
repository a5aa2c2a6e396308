#include "riskmetric/coupling.hpp"

#include <algorithm>

#include "riskmetric/error.hpp"
#include "riskmetric/probes.hpp"

namespace riskmetric {

namespace {

Values indicator(std::size_t n, Mask b) {
  Values f(n, Real(0));
  for (std::size_t i = 0; i < n; ++i)
    if ((b >> i) & 1U) f[i] = Real(1);
  return f;
}

Mask bit(std::size_t i) { return Mask{1} << i; }

void require_relation(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s, const char* context) {
  require_same_space(mu1.space(), s.left(), context);
  require_same_space(mu2.space(), s.right(), context);
}

Values envelope(std::span<const Real> chi, const Relation& s, Side side, const Real* fill, bool use_min) {
  const std::size_t n1 = s.rows();
  const std::size_t n2 = s.cols();
  if (chi.size() != n1 * n2) throw Error(ErrorKind::SpaceMismatch, "envelope input has the wrong size");
  const std::size_t outer = side == Side::Left ? n1 : n2;
  const std::size_t inner = side == Side::Left ? n2 : n1;
  Values out(outer);
  for (std::size_t a = 0; a < outer; ++a) {
    const Real* best = nullptr;
    for (std::size_t b = 0; b < inner; ++b) {
      const std::size_t i = side == Side::Left ? a : b;
      const std::size_t j = side == Side::Left ? b : a;
      if (!s.contains(i, j)) continue;
      const Real& v = chi[i * n2 + j];
      if (!best || (use_min ? v < *best : *best < v)) best = &v;
    }
    if (best) {
      out[a] = *best;
    } else if (fill) {
      out[a] = *fill;
    } else {
      throw Error(ErrorKind::EmptySection, "point " + (side == Side::Left ? s.left() : s.right())->label(a) +
                                               " has an empty section", {a});
    }
  }
  return out;
}

/// Extreme value of chi over S.
Real extreme_on(std::span<const Real> chi, const Relation& s, bool want_max) {
  const Real* best = nullptr;
  for (const auto& [i, j] : s.pairs()) {
    const Real& v = chi[i * s.cols() + j];
    if (!best || (want_max ? *best < v : v < *best)) best = &v;
  }
  if (!best) throw Error(ErrorKind::EmptySection, "empty relation");
  return *best;
}

/// mu1 of x -> min{psi(y) : y in S(x)}, with psi on the right space.
Real left_envelope_value(const RiskMeasure& mu1, const Relation& s, std::span<const Real> psi) {
  return mu1(min_envelope(probes::lift_right(psi, s.rows()), s, Side::Left,
                          extreme_on(probes::lift_right(psi, s.rows()), s, true)));
}

/// mu2 of y -> min{phi(x) : x in S^-1(y)}, with phi on the left space.
Real right_envelope_value(const RiskMeasure& mu2, const Relation& s, std::span<const Real> phi) {
  const Values chi = probes::lift_left(phi, s.cols());
  return mu2(min_envelope(chi, s, Side::Right, extreme_on(chi, s, true)));
}

std::optional<Certificate> support_certificate(const RiskMeasure& mu, Mask projection, Side side,
                                               const SupportOptions& options) {
  const std::size_t n = mu.space()->size();
  if (projection == full_mask(n)) return std::nullopt;
  const auto result = support(mu, options);
  for (const auto& ev : result.evidence) {
    if ((projection >> ev.point) & 1U) continue;
    Certificate c{Certificate::Kind::Support, side, ev.point, ev.phi, ev.psi, mu(ev.phi), mu(ev.psi)};
    return c;
  }
  return std::nullopt;
}

std::optional<Certificate> left_check(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                                      const Values& psi) {
  const Real lhs = left_envelope_value(mu1, s, psi);
  const Real rhs = mu2(psi);
  if (approx_le(lhs, rhs)) return std::nullopt;
  return Certificate{Certificate::Kind::LeftEnvelope, Side::Right, 0, {}, psi, lhs, rhs};
}

std::optional<Certificate> right_check(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                                       const Values& phi) {
  const Real lhs = right_envelope_value(mu2, s, phi);
  const Real rhs = mu1(phi);
  if (approx_le(lhs, rhs)) return std::nullopt;
  return Certificate{Certificate::Kind::RightEnvelope, Side::Left, 0, phi, {}, lhs, rhs};
}

FeasibilityVerdict infeasible(FeasibilityVerdict::Tier tier, Certificate c) {
  FeasibilityVerdict v;
  v.status = FeasibilityVerdict::Status::Infeasible;
  v.tier = tier;
  v.certificate = std::move(c);
  return v;
}

FeasibilityVerdict dirac_tier(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s) {
  const std::size_t x = std::get<RiskMeasure::DiracRep>(mu1.rep()).point;
  const std::size_t y = std::get<RiskMeasure::DiracRep>(mu2.rep()).point;
  const std::size_t n1 = s.rows();
  const std::size_t n2 = s.cols();
  if (s.contains(x, y)) {
    FeasibilityVerdict v;
    v.status = FeasibilityVerdict::Status::Feasible;
    v.tier = FeasibilityVerdict::Tier::Dirac;
    return v;
  }
  if (!((s.left_projection() >> x) & 1U))
    return infeasible(FeasibilityVerdict::Tier::Dirac,
                      {Certificate::Kind::Support, Side::Left, x, Values(n1, Real(0)), indicator(n1, bit(x)), Real(0), Real(1)});
  if (!((s.right_projection() >> y) & 1U))
    return infeasible(FeasibilityVerdict::Tier::Dirac,
                      {Certificate::Kind::Support, Side::Right, y, Values(n2, Real(0)), indicator(n2, bit(y)), Real(0), Real(1)});
  // 1 on S(x): its envelope is 1 at x, while y sits outside S(x).
  return infeasible(FeasibilityVerdict::Tier::Dirac, *left_check(mu1, mu2, s, indicator(n2, s.section(x))));
}

FeasibilityVerdict capacity_tier(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                                 const AdmissibilityOptions& options) {
  const auto& v1 = *mu1.capacity();
  const auto& v2 = *mu2.capacity();
  const std::size_t n1 = s.rows();
  const std::size_t n2 = s.cols();
  const auto tier = FeasibilityVerdict::Tier::ExactChoquet;
  const Mask p1 = s.left_projection();
  const Mask p2 = s.right_projection();

  if (auto c = support_certificate(mu1, p1, Side::Left, options.support)) return infeasible(tier, std::move(*c));
  if (auto c = support_certificate(mu2, p2, Side::Right, options.support)) return infeasible(tier, std::move(*c));

  std::vector<Mask> sections(n1), cosections(n2);
  for (std::size_t i = 0; i < n1; ++i) sections[i] = s.section(i);
  for (std::size_t j = 0; j < n2; ++j) cosections[j] = s.cosection(j);

  for (Mask b = 0; b <= full_mask(n2); ++b) {
    Mask inner = 0;
    for (std::size_t i = 0; i < n1; ++i)
      if (((p1 >> i) & 1U) && (sections[i] & ~b) == 0) inner |= bit(i);
    if (!approx_le(v1[inner], v2[b])) {
      if (auto c = left_check(mu1, mu2, s, indicator(n2, b))) return infeasible(tier, std::move(*c));
    }
  }
  for (Mask a = 0; a <= full_mask(n1); ++a) {
    Mask inner = 0;
    for (std::size_t j = 0; j < n2; ++j)
      if (((p2 >> j) & 1U) && (cosections[j] & ~a) == 0) inner |= bit(j);
    if (!approx_le(v2[inner], v1[a])) {
      if (auto c = right_check(mu1, mu2, s, indicator(n1, a))) return infeasible(tier, std::move(*c));
    }
  }
  FeasibilityVerdict out;
  out.status = FeasibilityVerdict::Status::Feasible;
  out.tier = tier;
  return out;
}

FeasibilityVerdict sampled_tier(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                                const AdmissibilityOptions& options) {
  const auto tier = FeasibilityVerdict::Tier::RefutationSampled;
  if (auto c = support_certificate(mu1, s.left_projection(), Side::Left, options.support))
    return infeasible(tier, std::move(*c));
  if (auto c = support_certificate(mu2, s.right_projection(), Side::Right, options.support))
    return infeasible(tier, std::move(*c));

  // Fresh stream per side, so swapping the marginals tests the same functions.
  auto grid_for = [&](const SpacePtr& space) {
    auto rng = Rng::stream(options.seed, "admissible");
    std::vector<Values> grid = probes::indicators(space->size());
    for (auto& f : probes::distance_functions(*space)) grid.push_back(std::move(f));
    for (auto& f : probes::random_functions(space->size(), options.refutation_probes, rng, -4, 4, 2))
      grid.push_back(std::move(f));
    return grid;
  };
  for (const auto& psi : grid_for(s.right()))
    if (auto c = left_check(mu1, mu2, s, psi)) return infeasible(tier, std::move(*c));
  for (const auto& phi : grid_for(s.left()))
    if (auto c = right_check(mu1, mu2, s, phi)) return infeasible(tier, std::move(*c));

  FeasibilityVerdict out;
  out.status = FeasibilityVerdict::Status::Unknown;
  out.tier = tier;
  if (!options.attempt_witness) return out;

  CouplingWitness w(mu1, mu2, s);
  const auto report = verify_coupling(w, options.probes);
  if (report.pass) {
    out.status = FeasibilityVerdict::Status::Feasible;
    out.tier = FeasibilityVerdict::Tier::WitnessFound;
    out.witness = std::move(w);
    return out;
  }
  for (const auto& bad : report.violations) {
    if (bad.axiom != Axiom::Marginal || bad.functions.empty()) continue;
    const auto c = bad.detail == "right" ? left_check(mu1, mu2, s, bad.functions[0])
                                         : right_check(mu1, mu2, s, bad.functions[0]);
    if (c) return infeasible(tier, *c);
  }
  return out;
}

}  // namespace

Values min_envelope(std::span<const Real> chi, const Relation& s, Side side) {
  return envelope(chi, s, side, nullptr, true);
}

Values min_envelope(std::span<const Real> chi, const Relation& s, Side side, const Real& fill) {
  return envelope(chi, s, side, &fill, true);
}

Values max_envelope(std::span<const Real> chi, const Relation& s, Side side, const Real& fill) {
  return envelope(chi, s, side, &fill, false);
}

CouplingWitness::CouplingWitness(RiskMeasure left, RiskMeasure right, Relation support, Formula formula)
    : left_(std::move(left)), right_(std::move(right)), support_(std::move(support)), formula_(formula) {
  require_relation(left_, right_, support_, "CouplingWitness");
  if (support_.count() == 0) throw Error(ErrorKind::EmptySection, "empty relation");
  product_ = FiniteMetricSpace::product(left_.space(), right_.space());
}

const char* CouplingWitness::formula_tag() const {
  return formula_ == Formula::LowerExtension ? "lower-extension" : "upper-extension";
}

Real CouplingWitness::operator()(std::span<const Real> chi) const {
  if (formula_ == Formula::LowerExtension) {
    const Real fill = extreme_on(chi, support_, true);
    return max(left_(min_envelope(chi, support_, Side::Left, fill)),
               right_(min_envelope(chi, support_, Side::Right, fill)));
  }
  const Real fill = extreme_on(chi, support_, false);
  return min(left_(max_envelope(chi, support_, Side::Left, fill)),
             right_(max_envelope(chi, support_, Side::Right, fill)));
}

RiskMeasure CouplingWitness::as_measure() const {
  CouplingWitness self = *this;
  return RiskMeasure::black_box(
      product_, [self](std::span<const Real> chi) { return self(chi); }, formula_tag());
}

const char* to_string(Certificate::Kind kind) {
  switch (kind) {
    case Certificate::Kind::Support: return "support";
    case Certificate::Kind::LeftEnvelope: return "left-envelope";
    case Certificate::Kind::RightEnvelope: return "right-envelope";
  }
  return "unknown";
}

const char* to_string(FeasibilityVerdict::Status status) {
  switch (status) {
    case FeasibilityVerdict::Status::Feasible: return "feasible";
    case FeasibilityVerdict::Status::Infeasible: return "infeasible";
    case FeasibilityVerdict::Status::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(FeasibilityVerdict::Tier tier) {
  switch (tier) {
    case FeasibilityVerdict::Tier::ExactChoquet: return "exact-choquet";
    case FeasibilityVerdict::Tier::Dirac: return "dirac";
    case FeasibilityVerdict::Tier::RefutationSampled: return "refutation-sampled";
    case FeasibilityVerdict::Tier::WitnessFound: return "witness-found";
  }
  return "unknown";
}

bool reverify(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s, const Certificate& c) {
  require_relation(mu1, mu2, s, "reverify");
  switch (c.kind) {
    case Certificate::Kind::Support: {
      const RiskMeasure& mu = c.side == Side::Left ? mu1 : mu2;
      const Mask projection = c.side == Side::Left ? s.left_projection() : s.right_projection();
      const std::size_t n = mu.space()->size();
      if (c.phi.size() != n || c.psi.size() != n) return false;
      for (std::size_t i = 0; i < n; ++i)
        if (((projection >> i) & 1U) && c.phi[i] != c.psi[i]) return false;
      return !approx_eq(mu(c.phi), mu(c.psi));
    }
    case Certificate::Kind::LeftEnvelope:
      if (c.psi.size() != s.cols()) return false;
      return !approx_le(left_envelope_value(mu1, s, c.psi), mu2(c.psi));
    case Certificate::Kind::RightEnvelope:
      if (c.phi.size() != s.rows()) return false;
      return !approx_le(right_envelope_value(mu2, s, c.phi), mu1(c.phi));
  }
  return false;
}

namespace {

// Two Dirac marginals with (x, y) in S: the formula over {(x, y)} is the point
// mass at (x, y). Any wider S gives a different (still admissible) coupling.
Relation witness_relation(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s) {
  if (mu1.kind() != RiskMeasure::Kind::Dirac || mu2.kind() != RiskMeasure::Kind::Dirac) return s;
  const std::size_t x = std::get<RiskMeasure::DiracRep>(mu1.rep()).point;
  const std::size_t y = std::get<RiskMeasure::DiracRep>(mu2.rep()).point;
  if (!s.contains(x, y)) return s;
  Relation single(s.left(), s.right());
  single.set(x, y);
  return single;
}

}  // namespace

FeasibilityVerdict admissible(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                              const AdmissibilityOptions& options) {
  require_relation(mu1, mu2, s, "admissible");
  if (s.count() == 0) {
    // No measure lives on the empty set; 0 and 1 agree on it but are valued differently.
    const std::size_t n1 = s.rows();
    return infeasible(FeasibilityVerdict::Tier::RefutationSampled,
                      {Certificate::Kind::Support, Side::Left, 0, Values(n1, Real(0)), Values(n1, Real(1)), Real(0), Real(1)});
  }
  FeasibilityVerdict v;
  const bool both_dirac = mu1.kind() == RiskMeasure::Kind::Dirac && mu2.kind() == RiskMeasure::Kind::Dirac;
  if (!options.force_sampled && both_dirac) {
    v = dirac_tier(mu1, mu2, s);
  } else if (!options.force_sampled && mu1.is_capacity() && mu2.is_capacity()) {
    v = capacity_tier(mu1, mu2, s, options);
  } else {
    return sampled_tier(mu1, mu2, s, options);
  }
  if (v.feasible() && options.attach_witness) v.witness = CouplingWitness(mu1, mu2, witness_relation(mu1, mu2, s));
  return v;
}

namespace {

CouplingWitness checked_witness(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                                const SupportOptions& support_options, CouplingWitness::Formula formula) {
  require_relation(mu1, mu2, s, "coupling");
  const Mask p1 = s.left_projection();
  const Mask p2 = s.right_projection();
  for (const auto& [mu, projection] : {std::pair{&mu1, p1}, std::pair{&mu2, p2}}) {
    if (projection == full_mask(mu->space()->size())) continue;
    const auto supp = support(*mu, support_options).subset.mask;
    const Mask outside = supp & ~projection;
    if (outside) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < mu->space()->size(); ++i)
        if ((outside >> i) & 1U) idx.push_back(i);
      throw Error(ErrorKind::EmptySection, "support point " + mu->space()->label(idx[0]) +
                                               " lies outside the projection of the relation", idx);
    }
  }
  return CouplingWitness(mu1, mu2, witness_relation(mu1, mu2, s), formula);
}

}  // namespace

CouplingWitness lower_coupling(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                               const SupportOptions& support_options) {
  return checked_witness(mu1, mu2, s, support_options, CouplingWitness::Formula::LowerExtension);
}

CouplingWitness upper_coupling(const RiskMeasure& mu1, const RiskMeasure& mu2, const Relation& s,
                               const SupportOptions& support_options) {
  return checked_witness(mu1, mu2, s, support_options, CouplingWitness::Formula::UpperExtension);
}

AxiomReport verify_coupling(const RiskMeasure& xi, const RiskMeasure& mu1, const RiskMeasure& mu2,
                            const Relation& s, const CouplingProbeOptions& options) {
  require_relation(mu1, mu2, s, "verify_coupling");
  const std::size_t n1 = s.rows();
  const std::size_t n2 = s.cols();
  const std::size_t n = n1 * n2;
  if (xi.space()->size() != n) throw Error(ErrorKind::SpaceMismatch, "coupling does not live on the product space");

  AxiomReport report;
  report.method = AxiomReport::Method::Sampled;
  report.seed = options.seed;
  auto rng = Rng::stream(options.seed, "verify_coupling");
  auto full = [&](Violation v) {
    if (report.violations.size() < options.max_violations) report.add(std::move(v));
    else report.pass = false;
  };

  std::vector<Values> grid;
  if (n <= options.all_subsets_up_to) {
    grid = probes::indicators(n);
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      Values e(n, Real(0)), c(n, Real(1));
      e[x] = Real(1);
      c[x] = Real(0);
      grid.push_back(std::move(e));
      grid.push_back(std::move(c));
    }
  }
  for (const auto& phi : probes::indicators(n1)) grid.push_back(probes::lift_left(phi, n2));
  for (const auto& psi : probes::indicators(n2)) grid.push_back(probes::lift_right(psi, n1));
  for (auto& f : probes::random_functions(n, options.random_probes, rng, -4, 4, 1)) grid.push_back(std::move(f));

  for (const Real& c : {Real(1), Real(0), Real(-3), Real(5, 2)}) {
    ++report.count;
    const Values phi(n, c);
    const Real got = xi(phi);
    if (!approx_eq(got, c)) full({Axiom::Normedness, {phi}, {c, got}, false, false, std::nullopt, "xi(c) != c"});
  }

  for (const auto& chi : grid) {
    Values up = chi;
    up[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] += rng.grid(1, 8, 4);
    const Real a = xi(chi);
    const Real b = xi(up);
    ++report.count;
    if (!approx_le(a, b)) full({Axiom::Monotonicity, {chi, up}, {a, b}, false, false, std::nullopt, "xi(phi) > xi(psi)"});

    const Real c = rng.grid(-3, 3, 2);
    Values shifted = chi;
    for (auto& v : shifted) v += c;
    const Real t = xi(shifted);
    ++report.count;
    if (!approx_eq(a + c, t))
      full({Axiom::TranslationInvariance, {chi}, {c, a, t}, false, false, std::nullopt, "xi(phi + c) != xi(phi) + c"});

    if (s.count() < n) {
      Values moved = chi;
      for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
          if (!s.contains(i, j)) moved[i * n2 + j] = rng.grid(-6, 6, 2);
      const Real m = xi(moved);
      ++report.count;
      if (!approx_eq(a, m))
        full({Axiom::SupportConfinement, {chi, moved}, {a, m}, false, false, std::nullopt,
              "value changes off the declared support"});
    }
  }

  // Fresh stream per side, so swapping the marginals probes the same functions.
  auto marginal_grid = [&](const SpacePtr& space) {
    auto side_rng = Rng::stream(options.seed, "verify_coupling.marginal");
    std::vector<Values> g = probes::indicators(space->size());
    for (auto& f : probes::distance_functions(*space)) g.push_back(std::move(f));
    for (auto& f : probes::random_functions(space->size(), 32, side_rng, -4, 4, 2)) g.push_back(std::move(f));
    return g;
  };
  for (const auto& phi : marginal_grid(s.left())) {
    const Real a = xi(probes::lift_left(phi, n2));
    const Real b = mu1(phi);
    ++report.count;
    if (!approx_eq(a, b)) full({Axiom::Marginal, {phi}, {a, b}, false, false, std::nullopt, "left"});
  }
  for (const auto& psi : marginal_grid(s.right())) {
    const Real a = xi(probes::lift_right(psi, n1));
    const Real b = mu2(psi);
    ++report.count;
    if (!approx_eq(a, b)) full({Axiom::Marginal, {psi}, {a, b}, false, false, std::nullopt, "right"});
  }
  return report;
}

AxiomReport verify_coupling(const CouplingWitness& witness, const CouplingProbeOptions& options) {
  return verify_coupling(witness.as_measure(), witness.left_marginal(), witness.right_marginal(),
                         witness.declared_support(), options);
}

namespace {

void require_pair_product(const SpacePtr& space, const char* context) {
  if (!space->is_product() || space->factors().size() != 2)
    throw Error(ErrorKind::InvalidParams, std::string(context) + " needs a measure on a product of two spaces");
}

}  // namespace

EqualityVerdict glue_marginal_check(const RiskMeasure& mu12, const RiskMeasure& mu23, const EqualityOptions& options) {
  require_pair_product(mu12.space(), "glue");
  require_pair_product(mu23.space(), "glue");
  require_same_space(mu12.space()->factors()[1], mu23.space()->factors()[0], "glue");
  const auto a = pushforward(PointMap::projection(mu12.space(), {1}), mu12);
  const auto b = pushforward(PointMap::projection(mu23.space(), {0}), mu23);
  return equal_measures(a, b, options);
}

RiskMeasure glue(const RiskMeasure& mu12, const RiskMeasure& mu23, const EqualityOptions& options) {
  const auto check = glue_marginal_check(mu12, mu23, options);
  if (check.status == EqualityVerdict::Status::No) {
    std::string values;
    for (const auto& v : *check.witness) values += (values.empty() ? "" : ",") + v.to_string();
    throw Error(ErrorKind::MarginalMismatch, "middle marginals differ on [" + values + "]");
  }
  const auto& f12 = mu12.space()->factors();
  const auto& f23 = mu23.space()->factors();
  const SpacePtr joined = FiniteMetricSpace::product({f12[0], f12[1], f23[1]});
  const std::size_t n1 = f12[0]->size();
  const std::size_t n2 = f12[1]->size();
  const std::size_t n3 = f23[1]->size();

  if (mu12.kind() == RiskMeasure::Kind::Dirac && mu23.kind() == RiskMeasure::Kind::Dirac) {
    const auto ab = mu12.space()->decode(std::get<RiskMeasure::DiracRep>(mu12.rep()).point);
    const auto bc = mu23.space()->decode(std::get<RiskMeasure::DiracRep>(mu23.rep()).point);
    const std::size_t coords[3] = {ab[0], ab[1], bc[1]};
    return RiskMeasure::dirac(joined, joined->encode(coords));
  }

  auto evaluator = [mu12, mu23, n1, n2, n3](std::span<const Real> chi) {
    Values m12(n1 * n2), m23(n2 * n3);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        Real lo = chi[(i * n2 + j) * n3];
        for (std::size_t k = 1; k < n3; ++k) lo = min(lo, chi[(i * n2 + j) * n3 + k]);
        m12[i * n2 + j] = lo;
      }
    for (std::size_t j = 0; j < n2; ++j)
      for (std::size_t k = 0; k < n3; ++k) {
        Real lo = chi[j * n3 + k];
        for (std::size_t i = 1; i < n1; ++i) lo = min(lo, chi[(i * n2 + j) * n3 + k]);
        m23[j * n3 + k] = lo;
      }
    return max(mu12(m12), mu23(m23));
  };
  return RiskMeasure::black_box(joined, evaluator, "glue");
}

AxiomReport verify_glue(const RiskMeasure& xi, const RiskMeasure& mu12, const RiskMeasure& mu23,
                        const CouplingProbeOptions& options) {
  require_pair_product(mu12.space(), "verify_glue");
  require_pair_product(mu23.space(), "verify_glue");
  const std::size_t n1 = mu12.space()->factors()[0]->size();
  const std::size_t n2 = mu12.space()->factors()[1]->size();
  const std::size_t n3 = mu23.space()->factors()[1]->size();
  if (xi.space()->size() != n1 * n2 * n3) throw Error(ErrorKind::SpaceMismatch, "glued measure has the wrong size");

  AxiomReport report;
  report.method = AxiomReport::Method::Sampled;
  report.seed = options.seed;
  auto rng = Rng::stream(options.seed, "verify_glue");
  auto grid_for = [&](std::size_t n) {
    std::vector<Values> g = probes::indicators(n);
    for (auto& f : probes::random_functions(n, options.random_probes, rng, -4, 4, 2)) g.push_back(std::move(f));
    return g;
  };
  auto check = [&](const Values& phi, const Values& lifted, const RiskMeasure& mu, const char* side) {
    const Real a = xi(lifted);
    const Real b = mu(phi);
    ++report.count;
    if (approx_eq(a, b)) return;
    if (report.violations.size() < options.max_violations)
      report.add({Axiom::Marginal, {phi}, {a, b}, false, false, std::nullopt, side});
    else
      report.pass = false;
  };
  for (const auto& phi : grid_for(n1 * n2)) {
    Values lifted(n1 * n2 * n3);
    for (std::size_t ij = 0; ij < n1 * n2; ++ij)
      for (std::size_t k = 0; k < n3; ++k) lifted[ij * n3 + k] = phi[ij];
    check(phi, lifted, mu12, "12");
  }
  for (const auto& psi : grid_for(n2 * n3)) {
    Values lifted(n1 * n2 * n3);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t jk = 0; jk < n2 * n3; ++jk) lifted[i * n2 * n3 + jk] = psi[jk];
    check(psi, lifted, mu23, "23");
  }
  return report;
}

}  // namespace riskmetric
