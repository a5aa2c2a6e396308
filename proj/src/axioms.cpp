#include "riskmetric/axioms.hpp"

#include "riskmetric/probes.hpp"

namespace riskmetric {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::Monotonicity: return "monotonicity";
    case Axiom::TranslationInvariance: return "translation-invariance";
    case Axiom::Normedness: return "normedness";
    case Axiom::Marginal: return "marginal";
    case Axiom::SupportConfinement: return "support-confinement";
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

Values shifted(std::span<const Real> phi, const Real& c) {
  Values out(phi.begin(), phi.end());
  for (auto& v : out) v += c;
  return out;
}

AxiomReport verify_capacity(const RiskMeasure& mu, const AxiomOptions& options) {
  AxiomReport report;
  report.method = AxiomReport::Method::Exact;
  const auto& v = *mu.capacity();
  const std::size_t n = v.points();
  const auto bad = v.violations(options.max_violations);
  report.count = (std::size_t{1} << n) * n;
  for (const auto& b : bad) {
    Violation out;
    out.table_entries = std::make_pair(b.smaller, b.larger);
    switch (b.kind) {
      case CapacityViolation::Kind::EmptyNotZero:
        out.axiom = Axiom::Normedness;
        out.detail = "v(empty) = " + v[0].to_string();
        out.values = {v[0]};
        break;
      case CapacityViolation::Kind::FullNotOne:
        out.axiom = Axiom::Normedness;
        out.detail = "v(X) = " + v[b.larger].to_string();
        out.functions = {Values(n, Real(1))};
        out.values = {Real(1), v[b.larger]};
        break;
      case CapacityViolation::Kind::NotMonotone:
        out.axiom = Axiom::Monotonicity;
        out.functions = {indicator(n, b.smaller), indicator(n, b.larger)};
        out.values = {v[b.smaller], v[b.larger]};
        out.detail = "v(A) > v(B) for A subset B";
        break;
    }
    report.add(std::move(out));
  }
  return report;
}

struct Recorder {
  const RiskMeasure& mu;
  AxiomReport& report;
  std::size_t limit;

  Real eval(std::span<const Real> phi, EvalTrace& trace) const { return mu.eval(phi, &trace); }

  void monotone(const Values& lo, const Values& hi) {
    EvalTrace t;
    const Real a = eval(lo, t);
    const Real b = eval(hi, t);
    if (approx_le(a, b) || report.violations.size() >= limit) {
      if (!approx_le(a, b)) report.pass = false;
      return;
    }
    report.add({Axiom::Monotonicity, {lo, hi}, {a, b}, t.branch_gap, t.branch_overlap, std::nullopt, "mu(phi) > mu(psi)"});
  }

  void translation(const Values& phi, const Real& c) {
    EvalTrace t;
    const Real a = eval(phi, t);
    const Real b = eval(shifted(phi, c), t);
    if (approx_eq(a + c, b) || report.violations.size() >= limit) {
      if (!approx_eq(a + c, b)) report.pass = false;
      return;
    }
    report.add({Axiom::TranslationInvariance, {phi}, {c, a, b}, t.branch_gap, t.branch_overlap, std::nullopt,
                "mu(phi + c) != mu(phi) + c"});
  }

  void normed(std::size_t n, const Real& c) {
    EvalTrace t;
    const Values phi(n, c);
    const Real a = eval(phi, t);
    if (approx_eq(a, c) || report.violations.size() >= limit) {
      if (!approx_eq(a, c)) report.pass = false;
      return;
    }
    report.add({Axiom::Normedness, {phi}, {c, a}, t.branch_gap, t.branch_overlap, std::nullopt, "mu(c) != c"});
  }
};

AxiomReport verify_sampled(const RiskMeasure& mu, const AxiomOptions& options) {
  AxiomReport report;
  report.method = AxiomReport::Method::Sampled;
  report.seed = options.seed;
  report.count = options.count;
  Recorder rec{mu, report, options.max_violations};
  const std::size_t n = mu.space()->size();
  auto rng = Rng::stream(options.seed, "verify_axioms");

  for (const Real& c : {Real(1), Real(0), Real(-3), Real(5, 2)}) rec.normed(n, c);

  if (n <= 8) {
    for (Mask b = 0; b <= full_mask(n); ++b)
      for (std::size_t x = 0; x < n; ++x)
        if (!((b >> x) & 1U)) rec.monotone(indicator(n, b), indicator(n, b | (Mask{1} << x)));
  }

  for (std::size_t k = 0; k < options.count; ++k) {
    Values phi(n);
    for (auto& v : phi) v = rng.grid(-8, 8, 2);
    Values psi = phi;
    if (k % 2 == 0) {
      psi[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1))] += rng.grid(0, 3, 4) + Real(1, 4);
    } else {
      for (auto& v : psi)
        if (rng.chance(1, 2)) v += rng.grid(0, 2, 2);
    }
    rec.monotone(phi, psi);
  }
  for (std::size_t k = 0; k < options.count; ++k) {
    Values phi(n);
    for (auto& v : phi) v = rng.grid(-8, 8, 2);
    rec.translation(phi, rng.grid(-5, 5, 2));
  }
  return report;
}

}  // namespace

AxiomReport verify_axioms(const RiskMeasure& mu, const AxiomOptions& options) {
  if (options.mode == AxiomOptions::Mode::Exact && mu.is_capacity()) return verify_capacity(mu, options);
  return verify_sampled(mu, options);
}

bool reverify(const RiskMeasure& mu, const Violation& violation) {
  if (violation.table_entries) {
    if (!mu.is_capacity()) return false;
    const auto& v = *mu.capacity();
    const auto [a, b] = *violation.table_entries;
    if (violation.axiom == Axiom::Monotonicity) return (a & ~b) == 0 && !approx_le(v[a], v[b]);
    if (a == 0 && b == 0) return !approx_eq(v[0], Real(0));
    return !approx_eq(v[b], Real(1));
  }
  const auto& f = violation.functions;
  switch (violation.axiom) {
    case Axiom::Monotonicity: {
      if (f.size() != 2) return false;
      for (std::size_t i = 0; i < f[0].size(); ++i)
        if (f[1][i] < f[0][i]) return false;
      return !approx_le(mu(f[0]), mu(f[1]));
    }
    case Axiom::TranslationInvariance: {
      if (f.size() != 1 || violation.values.empty()) return false;
      const Real& c = violation.values[0];
      return !approx_eq(mu(f[0]) + c, mu(shifted(f[0], c)));
    }
    case Axiom::Normedness: {
      if (f.size() != 1 || violation.values.empty()) return false;
      return !approx_eq(mu(f[0]), violation.values[0]);
    }
    default:
      return false;
  }
}

}  // namespace riskmetric
