#include "riskmetric/oracles.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "riskmetric/error.hpp"

namespace riskmetric::oracles {

using io::Json;

ProbabilityVector::ProbabilityVector(SpacePtr s, Values w) : space(std::move(s)), weights(std::move(w)) {
  if (weights.size() != space->size()) throw Error(ErrorKind::InvalidParams, "one weight per point expected");
  Real total(0);
  for (const auto& x : weights) {
    if (x < Real(0)) throw Error(ErrorKind::InvalidParams, "negative weight");
    total += x;
  }
  if (!approx_eq(total, Real(1))) throw Error(ErrorKind::InvalidParams, "weights sum to " + total.to_string());
}

namespace {

void require_pair(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s) {
  require_same_space(p.space, s.left(), "strassen");
  require_same_space(q.space, s.right(), "strassen");
}

}  // namespace

bool strassen_exhaustive(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s) {
  require_pair(p, q, s);
  const std::size_t n1 = p.weights.size();
  const std::size_t n2 = q.weights.size();
  for (std::uint64_t a = 1; a < (std::uint64_t{1} << n2); ++a) {
    Real need(0);
    for (std::size_t y = 0; y < n2; ++y)
      if ((a >> y) & 1U) need += q.weights[y];
    Real reach(0);
    for (std::size_t x = 0; x < n1; ++x) {
      bool meets = false;
      for (std::size_t y = 0; y < n2 && !meets; ++y) meets = ((a >> y) & 1U) && s.contains(x, y);
      if (meets) reach += p.weights[x];
    }
    if (!approx_le(need, reach)) return false;
  }
  return true;
}

bool strassen_flow(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s) {
  require_pair(p, q, s);
  const std::size_t n1 = p.weights.size();
  const std::size_t n2 = q.weights.size();
  const std::size_t nodes = n1 + n2 + 2;
  const std::size_t source = n1 + n2;
  const std::size_t sink = source + 1;
  // Residual capacities; a transport edge never needs more than the total mass 1.
  std::vector<Values> cap(nodes, Values(nodes, Real(0)));
  for (std::size_t x = 0; x < n1; ++x) cap[source][x] = p.weights[x];
  for (std::size_t y = 0; y < n2; ++y) cap[n1 + y][sink] = q.weights[y];
  for (std::size_t x = 0; x < n1; ++x)
    for (std::size_t y = 0; y < n2; ++y)
      if (s.contains(x, y)) cap[x][n1 + y] = Real(1);

  Real flow(0);
  while (true) {
    std::vector<std::size_t> parent(nodes, nodes);
    parent[source] = source;
    std::deque<std::size_t> queue{source};
    while (!queue.empty() && parent[sink] == nodes) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < nodes; ++v) {
        if (parent[v] != nodes || !(Real(0) < cap[u][v])) continue;
        parent[v] = u;
        queue.push_back(v);
      }
    }
    if (parent[sink] == nodes) break;
    Real push = cap[parent[sink]][sink];
    for (std::size_t v = sink; v != source; v = parent[v]) push = min(push, cap[parent[v]][v]);
    for (std::size_t v = sink; v != source; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    flow += push;
    // Float inputs: stop once the remaining augmentations are below tolerance.
    if (!push.is_exact() && push.to_double() < kFloatTolerance) break;
  }
  return approx_eq(flow, Real(1));
}

bool strassen_feasible(const ProbabilityVector& p, const ProbabilityVector& q, const Relation& s) {
  const bool a = strassen_exhaustive(p, q, s);
  const bool b = strassen_flow(p, q, s);
  if (a != b) throw std::logic_error("Hall check and flow check disagree");
  return a;
}

Real winf_distance(const ProbabilityVector& p, const ProbabilityVector& q) {
  require_same_space(p.space, q.space, "winf_distance");
  const auto levels = distance_levels(*p.space);
  for (const auto& t : levels)
    if (strassen_feasible(p, q, sublevel_relation(p.space, t))) return t;
  return levels.back();
}

SpacePtr random_space(std::size_t n, Rng& rng) {
  std::vector<Values> dist(n, Values(n, Real(0)));
  if (rng.chance(1, 2)) {
    std::vector<std::int64_t> pos(3 * n);
    std::iota(pos.begin(), pos.end(), 0);
    for (std::size_t i = pos.size() - 1; i > 0; --i)
      std::swap(pos[i], pos[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i)))]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dist[i][j] = Real(std::abs(pos[i] - pos[j]));
  } else {
    std::vector<std::int64_t> w(n);
    std::int64_t total = 0;
    for (auto& x : w) total += (x = rng.uniform(1, 3));
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t arc = 0;
      for (std::size_t j = i + 1; j < n; ++j) {
        arc += w[j - 1];
        dist[i][j] = dist[j][i] = Real(std::min(arc, total - arc));
      }
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  return FiniteMetricSpace::validate_metric(labels, dist);
}

Relation random_relation(const SpacePtr& left, const SpacePtr& right, Rng& rng, std::int64_t num, std::int64_t den) {
  Relation s(left, right);
  for (std::size_t i = 0; i < left->size(); ++i)
    for (std::size_t j = 0; j < right->size(); ++j)
      if (rng.chance(num, den)) s.set(i, j);
  return s;
}

namespace {

struct Instance {
  std::string kind;
  SpacePtr space;
  RiskMeasure mu1;
  RiskMeasure mu2;
  Relation s;
};

Json payload_of(const Instance& in, std::uint64_t seed, std::size_t refutations) {
  Json p;
  p["mode"] = "exact";
  p["seed"] = seed;
  p["refutation_samples"] = refutations;
  p["space"] = io::to_json(*in.space);
  p["mu1"] = io::to_json(in.mu1);
  p["mu2"] = io::to_json(in.mu2);
  p["relation"] = io::to_json(in.s);
  return p;
}

std::optional<ProbabilityVector> additive_weights(const RiskMeasure& mu) {
  if (!mu.is_capacity()) return std::nullopt;
  const auto& v = *mu.capacity();
  const std::size_t n = v.points();
  Values w(n);
  for (std::size_t x = 0; x < n; ++x) w[x] = v[Mask{1} << x];
  for (Mask s = 1; s <= full_mask(n); ++s) {
    Real sum(0);
    for (std::size_t x = 0; x < n; ++x)
      if ((s >> x) & 1U) sum += w[x];
    if (!(sum == v[s])) return std::nullopt;
  }
  return ProbabilityVector(mu.space(), w);
}

/// Runs every applicable comparison; returns the failed check name and detail.
std::vector<std::pair<std::string, std::string>> check_instance(const Instance& in, std::uint64_t seed,
                                                                std::size_t refutations) {
  std::vector<std::pair<std::string, std::string>> bad;
  AdmissibilityOptions exact;
  exact.seed = seed;
  exact.probes.seed = seed;
  const auto verdict = admissible(in.mu1, in.mu2, in.s, exact);
  if (verdict.status == FeasibilityVerdict::Status::Unknown) {
    bad.emplace_back("cross-check-tier", "exact tier returned unknown");
    return bad;
  }
  const bool feasible = verdict.feasible();

  if (in.kind == "dirac") {
    const std::size_t x = std::get<RiskMeasure::DiracRep>(in.mu1.rep()).point;
    const std::size_t y = std::get<RiskMeasure::DiracRep>(in.mu2.rep()).point;
    if (feasible != in.s.contains(x, y)) bad.emplace_back("cross-check-dirac", "verdict differs from membership");
    // The capacity route must agree with the Dirac route.
    const auto via_capacity = admissible(RiskMeasure::choquet(*in.mu1.capacity()), RiskMeasure::choquet(*in.mu2.capacity()), in.s, exact);
    if (via_capacity.feasible() != feasible) bad.emplace_back("cross-check-dirac", "capacity tier differs from the Dirac tier");
  }
  if (auto p = additive_weights(in.mu1)) {
    if (auto q = additive_weights(in.mu2)) {
      const bool hall = strassen_exhaustive(*p, *q, in.s);
      const bool flow = strassen_flow(*p, *q, in.s);
      if (hall != flow) bad.emplace_back("cross-check-oracles", "Hall check and flow check disagree");
      if (feasible != hall) bad.emplace_back("cross-check-additive", "exact tier differs from the Hall check");
    }
  }
  if (feasible) {
    try {
      SupportOptions so;
      so.seed = seed;
      CouplingProbeOptions po;
      po.seed = seed;
      const auto w = lower_coupling(in.mu1, in.mu2, in.s, so);
      const auto report = verify_coupling(w, po);
      if (!report.pass) bad.emplace_back("cross-check-witness", std::string("lower extension fails ") + to_string(report.violations.front().axiom));
    } catch (const Error& e) {
      bad.emplace_back("cross-check-witness", e.what());
    }
  } else if (!verdict.certificate || !reverify(in.mu1, in.mu2, in.s, *verdict.certificate)) {
    bad.emplace_back("cross-check-certificate", "infeasible certificate does not re-verify");
  }

  AdmissibilityOptions sampled = exact;
  sampled.force_sampled = true;
  sampled.refutation_probes = feasible ? 64 : refutations;
  const auto alt = admissible(in.mu1, in.mu2, in.s, sampled);
  if (!feasible && alt.feasible()) bad.emplace_back("cross-check-sampled", "sampled attempt found a witness for an infeasible instance");
  if (feasible && alt.infeasible()) bad.emplace_back("cross-check-sampled", "sampled refutation contradicts a feasible verdict");
  if (alt.infeasible() && alt.certificate && !reverify(in.mu1, in.mu2, in.s, *alt.certificate))
    bad.emplace_back("cross-check-certificate", "sampled certificate does not re-verify");
  return bad;
}

Relation instance_relation(const SpacePtr& space, Rng& rng, std::size_t k) {
  switch (k % 3) {
    case 0: {
      const auto levels = distance_levels(*space);
      return sublevel_relation(space, levels[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(levels.size()) - 1))]);
    }
    case 1: return random_relation(space, space, rng, 1, 2);
    default: return random_relation(space, space, rng, 2, 3);
  }
}

Instance make_instance(const std::string& kind, std::uint64_t seed, std::size_t k, const CrossCheckOptions& o) {
  auto rng = Rng::stream(seed, "cross-check-" + kind, k);
  const std::size_t n = static_cast<std::size_t>(rng.uniform(static_cast<std::int64_t>(o.min_points), static_cast<std::int64_t>(o.max_points)));
  const SpacePtr space = random_space(n, rng);
  Relation s = instance_relation(space, rng, k);
  if (kind == "additive")
    return {kind, space, expectation(space, random_probability(n, rng)), expectation(space, random_probability(n, rng)), std::move(s)};
  if (kind == "dirac") {
    const auto x = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    const auto y = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
    return {kind, space, RiskMeasure::dirac(space, x), RiskMeasure::dirac(space, y), std::move(s)};
  }
  auto a = RiskMeasure::choquet(random_capacity(space, rng));
  auto b = RiskMeasure::choquet(random_capacity(space, rng));
  return {kind, space, std::move(a), std::move(b), std::move(s)};
}

}  // namespace

AuditReport criterion_cross_check(const CrossCheckOptions& options) {
  AuditReport report;
  report.suite = "criterion-cross-check";
  std::vector<std::pair<std::string, std::size_t>> plan;
  for (std::size_t k = 0; k < options.additive_instances; ++k) plan.emplace_back("additive", k);
  for (std::size_t k = 0; k < options.choquet_instances; ++k) plan.emplace_back("choquet", k);
  for (std::size_t k = 0; k < options.dirac_instances; ++k) plan.emplace_back("dirac", k);

  std::vector<std::vector<AuditFailure>> found(plan.size() + 1);
  std::vector<int> feasible(plan.size() + 1, 0);
#pragma omp parallel for schedule(dynamic)
  for (long long e = 0; e < static_cast<long long>(plan.size()); ++e) {
    const auto& [kind, k] = plan[static_cast<std::size_t>(e)];
    const Instance in = make_instance(kind, options.seed, k, options);
    const std::uint64_t seed = Rng::derive(options.seed, "cross-check-instance", static_cast<std::uint64_t>(e));
    try {
      for (auto& [check, detail] : check_instance(in, seed, options.refutation_samples)) {
        Json p = payload_of(in, seed, options.refutation_samples);
        p["kind"] = kind;
        found[static_cast<std::size_t>(e)].push_back({check, detail, true, std::move(p)});
      }
      AdmissibilityOptions quick;
      quick.attach_witness = false;
      feasible[static_cast<std::size_t>(e)] = admissible(in.mu1, in.mu2, in.s, quick).feasible() ? 1 : 0;
    } catch (const std::exception& ex) {
      Json p = payload_of(in, seed, options.refutation_samples);
      p["kind"] = kind;
      found[static_cast<std::size_t>(e)].push_back({"cross-check-error", ex.what(), true, std::move(p)});
    }
  }

  // The delta_a / delta_c instance on the path a - b - c at threshold 1.
  {
    const std::vector<Values> dist{{Real(0), Real(1), Real(2)}, {Real(1), Real(0), Real(1)}, {Real(2), Real(1), Real(0)}};
    const SpacePtr p3 = FiniteMetricSpace::validate_metric({"a", "b", "c"}, dist);
    const Relation s = sublevel_relation(p3, Real(1));
    const auto da = RiskMeasure::dirac(p3, 0);
    const auto dc = RiskMeasure::dirac(p3, 2);
    AdmissibilityOptions o;
    o.seed = options.seed;
    AdmissibilityOptions forced = o;
    forced.force_sampled = true;
    forced.refutation_probes = options.refutation_samples;
    const bool dirac_tier = admissible(da, dc, s, o).infeasible();
    const bool capacity_tier = admissible(RiskMeasure::choquet(*da.capacity()), RiskMeasure::choquet(*dc.capacity()), s, o).infeasible();
    const bool sampled_tier = admissible(da, dc, s, forced).infeasible();
    const bool oracle = !strassen_feasible(ProbabilityVector(p3, {Real(1), Real(0), Real(0)}),
                                           ProbabilityVector(p3, {Real(0), Real(0), Real(1)}), s);
    report.summary["path_instance"] = {{"dirac", dirac_tier}, {"exact-choquet", capacity_tier},
                                       {"refutation-sampled", sampled_tier}, {"strassen", oracle}};
    if (!(dirac_tier && capacity_tier && sampled_tier && oracle)) {
      Instance in{"dirac", p3, da, dc, s};
      Json p = payload_of(in, options.seed, options.refutation_samples);
      p["kind"] = "path";
      found.back().push_back({"cross-check-path", "tiers disagree on the path instance", true, std::move(p)});
    }
  }

  std::size_t feasible_count = 0;
  for (std::size_t e = 0; e < plan.size(); ++e) feasible_count += static_cast<std::size_t>(feasible[e]);
  for (auto& list : found)
    for (auto& f : list) report.failures.push_back(std::move(f));
  report.instances = plan.size() + 1;
  report.summary["additive_instances"] = options.additive_instances;
  report.summary["choquet_instances"] = options.choquet_instances;
  report.summary["dirac_instances"] = options.dirac_instances;
  report.summary["feasible_instances"] = feasible_count;
  report.summary["refutation_samples"] = options.refutation_samples;
  report.summary["seed"] = options.seed;
  return report;
}

bool reverify_cross_check(const AuditFailure& failure) {
  try {
    const Json& p = failure.payload;
    const SpacePtr space = io::parse_space(p.at("space"), ArithmeticMode::Exact);
    Instance in{p.value("kind", "choquet"), space, io::parse_measure(p.at("mu1"), space, ArithmeticMode::Exact),
                io::parse_measure(p.at("mu2"), space, ArithmeticMode::Exact), io::parse_relation(p.at("relation"), space, space)};
    if (in.kind == "path") in.kind = "dirac";
    const auto bad = check_instance(in, p.value("seed", std::uint64_t{0}), p.value("refutation_samples", std::size_t{512}));
    return std::any_of(bad.begin(), bad.end(), [&](const auto& b) { return b.first == failure.check; }) ||
           (failure.check == "cross-check-path" && !bad.empty());
  } catch (const std::exception&) {
    return failure.check == "cross-check-error";
  }
}

}  // namespace riskmetric::oracles
