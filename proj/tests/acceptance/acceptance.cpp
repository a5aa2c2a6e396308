// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "riskmetric/audit.hpp"
#include "riskmetric/oracles.hpp"
#include "riskmetric/support.hpp"

using namespace riskmetric;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<std::string> kFixtures = {"two_point.json", "p3.json", "cycle4.json", "line5.json", "tree6.json"};

SpacePtr fixture(const std::string& name) {
  return io::parse_space(io::parse_text(io::read_source(std::string(FIXTURE_DIR) + "/" + name)), ArithmeticMode::Exact);
}

std::string fraction(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

Outcome dirac_isometry() {
  std::size_t pairs = 0, good = 0;
  std::string first_bad;
  for (const auto& name : kFixtures) {
    const auto s = fixture(name);
    for (std::size_t x = 0; x < s->size(); ++x)
      for (std::size_t y = 0; y < s->size(); ++y) {
        ++pairs;
        const auto r = rho_O(RiskMeasure::dirac(s, x), RiskMeasure::dirac(s, y));
        if (r.exact() && r.value.is_exact() && r.value == s->distance(x, y)) {
          ++good;
        } else if (first_bad.empty()) {
          first_bad = name + " (" + s->label(x) + "," + s->label(y) + ") -> " + r.value.to_string();
        }
      }
  }
  return {good == pairs, fraction(good, pairs) + " Dirac pairs equal the metric exactly" + (first_bad.empty() ? "" : "; first: " + first_bad)};
}

Outcome criterion_gate() {
  oracles::CrossCheckOptions o;
  o.additive_instances = 200;
  o.choquet_instances = 200;
  o.dirac_instances = 100;
  o.seed = 2024;
  const auto report = oracles::criterion_cross_check(o);
  std::size_t reproduced = 0;
  for (const auto& f : report.failures)
    if (oracles::reverify_cross_check(f)) ++reproduced;
  std::string detail = std::to_string(report.instances) + " instances, " + std::to_string(report.failures.size()) + " disagreements";
  if (!report.failures.empty()) detail += " (" + std::to_string(reproduced) + " reproduced; first: " + report.failures.front().check + ")";
  return {report.pass() && report.instances >= 500, detail};
}

Outcome winf_agreement() {
  auto rng = Rng::stream(31, "acceptance-winf");
  std::size_t total = 0, good = 0;
  for (std::size_t n : {3, 4, 5})
    for (int k = 0; k < 34; ++k) {
      const auto s = k < 17 && n == 3 ? fixture("p3.json") : k < 17 && n == 4 ? fixture("cycle4.json")
                                                          : k < 17 && n == 5 ? fixture("line5.json")
                                                                             : oracles::random_space(n, rng);
      const Values p = random_probability(n, rng);
      const Values q = random_probability(n, rng);
      const Real w = oracles::winf_distance(oracles::ProbabilityVector(s, p), oracles::ProbabilityVector(s, q));
      const auto r = rho_O(expectation(s, p), expectation(s, q));
      ++total;
      if (r.exact() && r.value == w) ++good;
    }
  return {good == total && total >= 100, fraction(good, total) + " probability pairs match the bottleneck transport oracle"};
}

struct AuditRun {
  std::string space;
  SpacePtr ptr;
  AuditReport report;
  double seconds = 0;
};

std::vector<AuditRun>& audits() {
  static std::vector<AuditRun> runs = [] {
    std::vector<AuditRun> out;
    for (const auto& name : kFixtures) {
      const auto t0 = std::chrono::steady_clock::now();
      EnsembleSpec spec;
      spec.count = 100;
      spec.seed = 7;
      const auto s = fixture(name);
      auto report = metric_axiom_audit(s, spec);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      out.push_back({name, s, std::move(report), secs});
    }
    return out;
  }();
  return runs;
}

/// Failures of the given checks: total, capacity-tier, reproduced.
struct FailureCount {
  std::size_t total = 0, capacity = 0, reproduced = 0;
};

FailureCount count_failures(const std::vector<std::string>& checks) {
  FailureCount c;
  for (const auto& run : audits())
    for (const auto& f : run.report.failures) {
      if (std::find(checks.begin(), checks.end(), f.check) == checks.end()) continue;
      ++c.total;
      if (f.capacity_tier) ++c.capacity;
      if (reverify(f)) ++c.reproduced;
    }
  return c;
}

Outcome metric_axioms() {
  const auto c = count_failures({"symmetry", "identity", "triangle"});
  std::ostringstream d;
  std::size_t measures = 0;
  for (const auto& run : audits()) measures += run.report.instances;
  d << measures << " measures over " << audits().size() << " spaces; " << c.total << " axiom failures (" << c.capacity
    << " capacity tier, " << c.reproduced << " reproduced)";
  // Sampled-tier counterexamples are acceptable only when they re-verify.
  const bool ok = c.capacity == 0 && c.reproduced == c.total;
  for (const auto& run : audits())
    if (run.report.instances < 100) return {false, d.str() + "; ensemble too small on " + run.space};
  return {ok, d.str()};
}

Outcome diameter() {
  std::ostringstream d;
  bool ok = true;
  for (const auto& run : audits()) {
    const auto& sum = run.report.summary;
    const Real diam = Real::parse(sum.at("diameter").get<std::string>(), ArithmeticMode::Exact);
    const Real largest = Real::parse(sum.at("max_distance").get<std::string>(), ArithmeticMode::Exact);
    const Real extreme = rho_O(unanimity_min(run.ptr), possibility_max(run.ptr)).value;
    const bool here = largest <= diam && extreme == diam;
    ok = ok && here;
    d << run.space << ": max " << largest.to_string() << ", rho(min,max) " << extreme.to_string() << ", diam " << diam.to_string()
      << "; ";
  }
  const auto c = count_failures({"diameter"});
  ok = ok && c.total == 0;
  return {ok, d.str() + std::to_string(c.total) + " diameter failures"};
}

Outcome witness_optimality() {
  const auto c = count_failures({"witness"});
  std::size_t verified = 0;
  for (const auto& run : audits()) verified += run.report.summary.value("witnesses_verified", std::size_t{0});
  std::string detail = std::to_string(verified) + " witnesses checked, " + std::to_string(c.total) + " problems";
  for (const auto& run : audits())
    for (const auto& f : run.report.failures)
      if (f.check == "witness") return {false, detail + "; first: " + run.space + " " + f.detail};
  return {c.total == 0 && verified > 0, detail};
}

Outcome lipschitz() {
  const auto c = count_failures({"lipschitz"});
  std::size_t checks = 0;
  for (const auto& run : audits()) checks += run.report.summary.value("lipschitz_checks", std::size_t{0});
  return {c.total == 0 && checks > 0, std::to_string(checks) + " pair/probe checks, " + std::to_string(c.total) + " violations"};
}

Outcome gluing() {
  auto rng = Rng::stream(41, "acceptance-glue");
  std::size_t triples = 0, good = 0;
  std::string first_bad;
  for (int k = 0; k < 54; ++k) {
    const auto s = fixture(k % 3 == 0 ? "two_point.json" : "p3.json");
    auto draw = [&]() {
      if (rng.chance(1, 4)) return RiskMeasure::dirac(s, static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(s->size()) - 1)));
      return RiskMeasure::choquet(random_capacity(s, rng));
    };
    const auto mu1 = draw(), mu2 = draw(), mu3 = draw();
    const auto r12 = rho_O(mu1, mu2);
    const auto r23 = rho_O(mu2, mu3);
    if (!r12.witness || !r23.witness) continue;
    ++triples;
    const auto a = r12.witness->as_measure();
    const auto b = r23.witness->as_measure();
    const auto xi = glue(a, b);
    CouplingProbeOptions o;
    o.seed = static_cast<std::uint64_t>(k);
    const auto report = verify_glue(xi, a, b, o);
    if (report.pass) ++good;
    else if (first_bad.empty()) first_bad = "triple " + std::to_string(k) + ": " + report.violations.front().detail;
  }
  return {good == triples && triples >= 50,
          fraction(good, triples) + " glued triples satisfy both projection identities" + (first_bad.empty() ? "" : "; first: " + first_bad)};
}

Outcome two_point_family() {
  auto rng = Rng::stream(51, "acceptance-two-point");
  const auto s = fixture("two_point.json");
  std::size_t sets = 0, failing = 0, with_gap = 0, overlap_only = 0, unflagged = 0;
  std::map<std::string, std::size_t> by_axiom;
  while (sets < 1000) {
    const TwoPointParams p = random_two_point(rng);
    ++sets;
    AxiomOptions o;
    o.mode = AxiomOptions::Mode::Sampled;
    o.count = 1000;
    o.seed = sets;
    const auto report = verify_axioms(RiskMeasure::two_point(s, p), o);
    if (report.pass) continue;
    ++failing;
    bool gap = false, overlap = false;
    for (const auto& v : report.violations) {
      gap = gap || v.branch_gap;
      overlap = overlap || v.branch_overlap;
      ++by_axiom[to_string(v.axiom)];
    }
    if (gap) ++with_gap;
    else if (overlap) ++overlap_only;
    else ++unflagged;
  }
  std::ostringstream d;
  d << sets << " parameter sets x 1000 probes; " << failing << " fail (" << with_gap << " with branch-gap flag, " << overlap_only
    << " overlap-only, " << unflagged << " unflagged)";
  for (const auto& [axiom, n] : by_axiom) d << " " << axiom << "=" << n;
  return {with_gap == failing, d.str()};
}

Outcome convergence() {
  const auto s = fixture("p3.json");
  const auto seq = mixture_sequence(s, 0, 2, 10);
  const auto report = convergence_audit(seq, RiskMeasure::dirac(s, 0));
  const auto rows = convergence_rows(report);
  std::vector<Real> g;
  bool constant = true;
  for (const auto& row : rows) {
    g.push_back(row.gap);
    constant = constant && row.distance == s->diameter() && row.hausdorff == s->diameter();
  }
  const bool flagged = report.discrepancies.size() == 1 && reverify(report.discrepancies.front());
  std::size_t lipschitz_failures = report.failures.size();

  // Further instances: constant, eventually constant and random capacity sequences.
  auto rng = Rng::stream(61, "acceptance-convergence");
  std::size_t instances = 1;
  for (const auto& name : kFixtures) {
    const auto sp = fixture(name);
    for (int k = 0; k < 4; ++k) {
      std::vector<RiskMeasure> seq2;
      const auto limit = RiskMeasure::choquet(random_capacity(sp, rng));
      for (int n = 0; n < 6; ++n) seq2.push_back(n >= 4 && k % 2 == 0 ? limit : RiskMeasure::choquet(random_capacity(sp, rng)));
      ConvergenceOptions o;
      o.seed = static_cast<std::uint64_t>(k);
      lipschitz_failures += convergence_audit(seq2, limit, o).failures.size();
      ++instances;
    }
  }
  std::ostringstream d;
  d << "mixture sequence: g_n " << (tends_to_zero(g) ? "-> 0" : "does not shrink") << ", r_n = h_n = diam " << (constant ? "for all n" : "violated")
    << ", discrepancy " << (flagged ? "flagged" : "missing") << "; " << instances << " instances, " << lipschitz_failures
    << " Lipschitz violations";
  return {tends_to_zero(g) && constant && flagged && lipschitz_failures == 0, d.str()};
}

Outcome support_semantics() {
  std::size_t instances = 0, inside = 0, capacity_checked = 0, capacity_agree = 0;
  auto rng = Rng::stream(71, "acceptance-support");
  for (const auto& name : kFixtures) {
    const auto s = fixture(name);
    EnsembleSpec spec;
    spec.count = 60;
    spec.seed = 5;
    for (const auto& mu : generate_ensemble(s, spec)) {
      std::vector<std::size_t> image(s->size());
      for (auto& y : image) y = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(s->size()) - 1));
      const PointMap f(s, s, image);
      const Mask pushed = support(pushforward(f, mu)).subset.mask;
      const Mask bound = f.image_of(support(mu).subset.mask);
      ++instances;
      if ((pushed & ~bound) == 0) ++inside;
      if (mu.is_capacity()) {
        ++capacity_checked;
        if (support_null_points(mu) == support_exhaustive(mu)) ++capacity_agree;
      }
    }
  }
  // Lattice black box on {0,1}^2 whose projection support shrinks strictly.
  const auto two = fixture("two_point.json");
  const auto sq = FiniteMetricSpace::product(two, two);
  auto at = [&](std::size_t i, std::size_t j) { return RiskMeasure::dirac(sq, sq->encode(std::vector<std::size_t>{i, j})); };
  const auto mu = RiskMeasure::lattice_max({at(0, 0), RiskMeasure::lattice_min({at(0, 1), at(1, 0)})});
  const auto proj = PointMap::projection(sq, {0});
  const Mask pushed = support(pushforward(proj, mu)).subset.mask;
  const Mask bound = proj.image_of(support(mu).subset.mask);
  const bool strict = (pushed & ~bound) == 0 && pushed != bound;
  std::ostringstream d;
  d << fraction(inside, instances) << " pushforward supports inside the image; lattice instance "
    << (strict ? "strict" : "not strict") << " (" << pushed << " vs " << bound << "); null-point = exhaustive on "
    << fraction(capacity_agree, capacity_checked);
  return {inside == instances && strict && capacity_agree == capacity_checked, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", dirac_isometry},  {"AC2", criterion_gate},     {"AC3", winf_agreement}, {"AC4", metric_axioms},
      {"AC5", diameter},        {"AC6", witness_optimality}, {"AC7", lipschitz},      {"AC8", gluing},
      {"AC9", two_point_family}, {"AC10", convergence},      {"AC11", support_semantics},
  };
  bool all = true;
  for (const auto& [id, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && out.pass;
    std::printf("%s %s: %s [%.1fs]\n", id.c_str(), out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
