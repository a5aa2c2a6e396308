#include "riskmetric/audit.hpp"

#include <algorithm>
#include <exception>

#include "riskmetric/error.hpp"
#include "riskmetric/oracles.hpp"
#include "riskmetric/probes.hpp"

namespace riskmetric {

using io::Json;

io::Json to_json(const AuditReport& report) {
  Json out;
  out["suite"] = report.suite;
  out["instances"] = report.instances;
  out["pass"] = report.pass();
  auto list = [](const std::vector<AuditFailure>& items) {
    Json arr = Json::array();
    for (const auto& f : items) {
      Json j;
      j["check"] = f.check;
      j["detail"] = f.detail;
      j["capacity_tier"] = f.capacity_tier;
      j["payload"] = f.payload;
      arr.push_back(std::move(j));
    }
    return arr;
  };
  out["failures"] = list(report.failures);
  out["discrepancies"] = list(report.discrepancies);
  out["summary"] = report.summary;
  return out;
}

namespace {



Json base_payload(const SpacePtr& space) {
  Json p;
  p["mode"] = space->is_exact() ? "exact" : "float";
  p["space"] = io::to_json(*space);
  return p;
}

struct Loaded {
  SpacePtr space;
  ArithmeticMode mode;
};

Loaded load(const Json& payload) {
  const ArithmeticMode mode = payload.value("mode", "exact") == "float" ? ArithmeticMode::Float : ArithmeticMode::Exact;
  return {io::parse_space(payload.at("space"), mode), mode};
}

RiskMeasure measure_at(const Json& payload, const char* key, const Loaded& l) {
  return io::parse_measure(payload.at(key), l.space, l.mode);
}

DistanceOptions replay_options(const Json& payload) {
  DistanceOptions o;
  o.check_axioms = false;
  o.admissibility.seed = payload.value("seed", std::uint64_t{0});
  o.admissibility.probes.seed = o.admissibility.seed;
  return o;
}

bool single_switch(const DistanceResult& r) {
  bool seen_feasible = false;
  for (const auto& step : r.ladder) {
    const bool f = step.status == FeasibilityVerdict::Status::Feasible;
    if (seen_feasible && !f) return false;
    seen_feasible = seen_feasible || f;
  }
  return seen_feasible;
}

/// Empty string when the witness checks out, otherwise the reason.
std::string witness_problem(const DistanceResult& r, const CouplingProbeOptions& probes) {
  if (!single_switch(r)) return "ladder switches more than once";
  if (!r.witness) return "no witness";
  if (!(r.witness->declared_support().max_distance() == r.value)) return "declared support reaches a different distance";
  const auto report = verify_coupling(*r.witness, probes);
  if (!report.pass) {
    const auto& v = report.violations.front();
    return std::string("witness fails ") + to_string(v.axiom) + (v.detail.empty() ? "" : " (" + v.detail + ")");
  }
  return "";
}

std::vector<Values> lipschitz_probes(const FiniteMetricSpace& space, std::size_t randoms, std::uint64_t seed) {
  auto rng = Rng::stream(seed, "lipschitz");
  std::vector<Values> out = probes::indicators(space.size());
  for (auto& f : probes::distance_functions(space)) out.push_back(std::move(f));
  for (auto& f : probes::random_functions(space.size(), randoms, rng, -4, 4, 2)) out.push_back(std::move(f));
  return out;
}

bool lipschitz_holds(const SpacePtr& space, const Values& phi, const Real& a, const Real& b, const Real& distance) {
  const Real omega = modulus_of_continuity(PointFunction(space, phi), distance);
  return approx_le(abs(a - b), omega);
}

bool tends(const std::vector<Real>& seq) { return tends_to_zero(seq); }

}  // namespace

bool tends_to_zero(const std::vector<Real>& seq) {
  if (seq.empty()) return true;
  if (std::all_of(seq.begin(), seq.end(), [](const Real& r) { return r.is_zero(); })) return true;
  return approx_le(seq.back() * Real(4), seq.front());
}

Values random_probability(std::size_t n, Rng& rng, std::int64_t den) {
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  while (total == 0) {
    total = 0;
    for (auto& x : w) {
      x = rng.chance(1, 3) ? 0 : rng.uniform(1, den);
      total += x;
    }
  }
  Values p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = Real(w[i], total);
  return p;
}

Capacity random_capacity(const SpacePtr& space, Rng& rng, std::int64_t den) {
  const std::size_t n = space->size();
  const Mask full = full_mask(n);
  Values v(full + 1, Real(0));
  for (Mask s = 1; s < full; ++s) {
    Real best = rng.chance(1, 2) ? rng.grid(0, 1, den) : Real(0);
    for (std::size_t x = 0; x < n; ++x)
      if ((s >> x) & 1U) best = max(best, v[s & ~(Mask{1} << x)]);
    v[s] = best;
  }
  v[full] = Real(1);
  return Capacity::from_table(space, std::move(v));
}

TwoPointParams random_two_point(Rng& rng) {
  TwoPointParams p;
  std::int64_t left = 4;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::int64_t a = rng.uniform(0, left);
    p.alpha[i] = Real(a, 4);
    left -= a;
  }
  p.alpha[3] = Real(left, 4);
  auto offset = [&](int sign) {
    if (rng.chance(1, 3)) return sign < 0 ? ExtendedReal::neg_inf() : ExtendedReal::pos_inf();
    if (rng.chance(1, 2)) return ExtendedReal::finite(Real(0));
    return ExtendedReal::finite(Real(sign) * rng.grid(1, 3, 2));
  };
  const bool first_zero = rng.chance(1, 2);
  p.lambda[0] = first_zero ? ExtendedReal::finite(Real(0)) : offset(-1);
  p.lambda[1] = first_zero ? offset(-1) : ExtendedReal::finite(Real(0));
  const bool third_zero = rng.chance(1, 2);
  p.lambda[2] = third_zero ? ExtendedReal::finite(Real(0)) : offset(+1);
  p.lambda[3] = third_zero ? offset(+1) : ExtendedReal::finite(Real(0));
  switch (rng.uniform(0, 3)) {
    case 0: p.f = ShapeFunction::zero(); break;
    case 1: p.f = ShapeFunction::identity(); break;
    case 2: p.f = ShapeFunction({{Real(0), Real(0)}, {Real(2), Real(1)}}); break;
    default: p.f = ShapeFunction({{Real(-1), Real(0)}, {Real(0), Real(0)}, {Real(1), Real(0)}, {Real(2), Real(1)}}); break;
  }
  return p;
}

std::vector<RiskMeasure> generate_ensemble(const SpacePtr& space, const EnsembleSpec& spec) {
  const std::size_t n = space->size();
  auto rng = Rng::stream(spec.seed, "ensemble");
  std::vector<RiskMeasure> out;
  std::vector<RiskMeasure> capacity_members;
  auto push = [&](RiskMeasure mu) {
    if (mu.is_capacity()) capacity_members.push_back(mu);
    out.push_back(std::move(mu));
  };
  for (std::size_t x = 0; x < n && out.size() < spec.count; ++x) push(RiskMeasure::dirac(space, x));
  if (out.size() < spec.count) push(unanimity_min(space));
  if (out.size() < spec.count) push(possibility_max(space));

  std::size_t lattice = 0;
  std::size_t family = 0;
  std::size_t family_attempts = 0;
  auto pick = [&]() { return capacity_members[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(capacity_members.size()) - 1))]; };
  while (out.size() < spec.count) {
    const std::size_t k = out.size();
    if (n == 2 && family < spec.two_point && family_attempts < 20 * spec.two_point) {
      ++family_attempts;
      auto mu = RiskMeasure::two_point(space, random_two_point(rng));
      AxiomOptions gate{AxiomOptions::Mode::Sampled, 1000, spec.seed, 1};
      if (verify_axioms(mu, gate).pass) {
        push(std::move(mu));
        ++family;
      }
      continue;
    }
    if (lattice < spec.lattice && k % 7 == 3) {
      std::vector<RiskMeasure> parts{RiskMeasure::choquet(random_capacity(space, rng)), pick()};
      push(lattice % 2 == 0 ? RiskMeasure::lattice_max(std::move(parts)) : RiskMeasure::lattice_min(std::move(parts)));
      ++lattice;
      continue;
    }
    if (k % 10 == 9) {
      // A fresh object with an existing table exercises the identity check.
      push(RiskMeasure::choquet(Capacity::from_table(space, pick().capacity()->table())));
      continue;
    }
    switch (rng.uniform(0, 4)) {
      case 0:
      case 1: push(RiskMeasure::choquet(random_capacity(space, rng))); break;
      case 2: push(expectation(space, random_probability(n, rng))); break;
      case 3: {
        const Real w = rng.grid(1, 3, 4) / Real(4) + Real(1, 4);
        push(RiskMeasure::mixture({w, Real(1) - w}, {pick(), RiskMeasure::choquet(random_capacity(space, rng))}));
        break;
      }
      default: {
        const Values p = random_probability(n, rng);
        const Real level = Real(rng.uniform(1, 3), 4);
        push(rng.chance(1, 2) ? var_quantile(space, p, level) : cvar(space, p, level));
        break;
      }
    }
  }
  return out;
}


namespace {

bool all_capacity(std::initializer_list<const RiskMeasure*> list) {
  return std::all_of(list.begin(), list.end(), [](const RiskMeasure* m) { return m->is_capacity(); });
}

Json pair_payload(const SpacePtr& space, const RiskMeasure& a, const RiskMeasure& b, std::uint64_t seed) {
  Json p = base_payload(space);
  p["seed"] = seed;
  p["mu1"] = io::to_json(a);
  p["mu2"] = io::to_json(b);
  return p;
}

}  // namespace

AuditReport metric_axiom_audit(const std::vector<RiskMeasure>& measures, const MetricAuditOptions& options) {
  AuditReport report;
  report.suite = "metric-axioms";
  report.instances = measures.size();
  if (measures.empty()) return report;
  const SpacePtr space = measures.front().space();
  const std::size_t m = measures.size();
  const std::uint64_t seed = options.distance.admissibility.seed;
  const auto d = distance_matrix(measures, options.distance);
  auto value = [&](std::size_t i, std::size_t j) -> const Real& { return d[i][j].value; };
  auto fail = [&](std::string check, std::string detail, bool capacity, Json payload) {
    report.failures.push_back({std::move(check), std::move(detail), capacity, std::move(payload)});
  };

  std::size_t bounds = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!d[i][j].exact()) ++bounds;

  // Symmetry, exact comparison of the computed values.
  std::size_t asymmetric = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (value(i, j) == value(j, i)) continue;
      ++asymmetric;
      Json p = pair_payload(space, measures[i], measures[j], seed);
      p["d12"] = value(i, j).to_string();
      p["d21"] = value(j, i).to_string();
      fail("symmetry", "rho(mu1, mu2) != rho(mu2, mu1)", all_capacity({&measures[i], &measures[j]}), std::move(p));
    }

  // Identity of indiscernibles against equal_measures.
  std::size_t zero_pairs = 0, certified_equal = 0, undecided_zero = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      const bool zero = value(i, j).is_zero();
      const bool capacity = all_capacity({&measures[i], &measures[j]});
      if (!zero && !capacity) continue;
      const auto eq = i == j ? EqualityVerdict{EqualityVerdict::Status::Yes, std::nullopt, 0}
                             : equal_measures(measures[i], measures[j], options.equality);
      if (zero) ++zero_pairs;
      if (zero && eq.status == EqualityVerdict::Status::Undecided) ++undecided_zero;
      if (eq.status == EqualityVerdict::Status::Yes) ++certified_equal;
      const bool bad = (zero && eq.status == EqualityVerdict::Status::No) || (!zero && eq.status == EqualityVerdict::Status::Yes);
      if (!bad) continue;
      Json p = pair_payload(space, measures[i], measures[j], seed);
      p["distance"] = value(i, j).to_string();
      p["equal"] = to_string(eq.status);
      if (eq.witness) p["witness"] = io::to_json(*eq.witness);
      fail("identity", zero ? "distance 0 between separated measures" : "positive distance between equal measures", capacity,
           std::move(p));
    }

  // Triangle inequality over all ordered triples.
  std::size_t triangle_failures = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        if (approx_le(value(i, k), value(i, j) + value(j, k))) continue;
        if (++triangle_failures > 16) continue;
        Json p = base_payload(space);
        p["seed"] = seed;
        p["mu1"] = io::to_json(measures[i]);
        p["mu2"] = io::to_json(measures[j]);
        p["mu3"] = io::to_json(measures[k]);
        p["d12"] = value(i, j).to_string();
        p["d23"] = value(j, k).to_string();
        p["d13"] = value(i, k).to_string();
        fail("triangle", "rho(mu1, mu3) > rho(mu1, mu2) + rho(mu2, mu3)",
             all_capacity({&measures[i], &measures[j], &measures[k]}), std::move(p));
      }

  // Diameter: bound over the ensemble, attainment by the min/max pair.
  const Real diam = space->diameter();
  Real largest(0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      largest = max(largest, value(i, j));
      if (approx_le(value(i, j), diam)) continue;
      Json p = pair_payload(space, measures[i], measures[j], seed);
      p["kind"] = "bound";
      p["distance"] = value(i, j).to_string();
      fail("diameter", "distance exceeds the diameter", all_capacity({&measures[i], &measures[j]}), std::move(p));
    }
  DistanceOptions extremes = options.distance;
  extremes.check_axioms = false;
  const auto lo = unanimity_min(space);
  const auto hi = possibility_max(space);
  const Real extreme = rho_O(lo, hi, extremes).value;
  if (!(extreme == diam)) {
    Json p = pair_payload(space, lo, hi, seed);
    p["kind"] = "attainment";
    p["distance"] = extreme.to_string();
    fail("diameter", "rho(min, max) differs from the diameter", true, std::move(p));
  }

  // Lipschitz control on a shared probe set (values cached per measure).
  const auto probe_set = lipschitz_probes(*space, options.lipschitz_random_probes, seed);
  std::vector<Values> cached(m, Values(probe_set.size()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < probe_set.size(); ++k) cached[i][k] = measures[i](probe_set[k]);
  std::size_t lipschitz_checks = 0, lipschitz_failures = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = 0; k < probe_set.size(); ++k) {
        ++lipschitz_checks;
        if (lipschitz_holds(space, probe_set[k], cached[i][k], cached[j][k], value(i, j))) continue;
        if (++lipschitz_failures > 16) continue;
        Json p = pair_payload(space, measures[i], measures[j], seed);
        p["phi"] = io::to_json(probe_set[k]);
        p["distance"] = value(i, j).to_string();
        fail("lipschitz", "|mu1(phi) - mu2(phi)| exceeds the modulus at rho", all_capacity({&measures[i], &measures[j]}),
             std::move(p));
      }

  // Witness optimality for every entry, both triangles and the diagonal.
  std::size_t witnesses = 0;
  if (options.verify_witnesses) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) pairs.emplace_back(i, j);
    std::vector<std::string> problems(pairs.size());
    CouplingProbeOptions probes = options.witness_probes;
    probes.seed = seed;
#pragma omp parallel for schedule(dynamic)
    for (long long e = 0; e < static_cast<long long>(pairs.size()); ++e) {
      const auto [i, j] = pairs[static_cast<std::size_t>(e)];
      problems[static_cast<std::size_t>(e)] = witness_problem(d[i][j], probes);
    }
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      ++witnesses;
      if (problems[e].empty()) continue;
      const auto [i, j] = pairs[e];
      Json p = pair_payload(space, measures[i], measures[j], seed);
      p["distance"] = value(i, j).to_string();
      p["probes"] = probes.random_probes;
      fail("witness", problems[e], all_capacity({&measures[i], &measures[j]}), std::move(p));
    }
  }

  std::size_t capacity_members = 0;
  for (const auto& mu : measures)
    if (mu.is_capacity()) ++capacity_members;
  report.summary["measures"] = m;
  report.summary["capacity_tier_measures"] = capacity_members;
  report.summary["pairs"] = m * m;
  report.summary["bounded_entries"] = bounds;
  report.summary["asymmetric_pairs"] = asymmetric;
  report.summary["zero_distance_pairs"] = zero_pairs;
  report.summary["certified_equal_pairs"] = certified_equal;
  report.summary["zero_distance_undecided_pairs"] = undecided_zero;
  report.summary["triangle_failures"] = triangle_failures;
  report.summary["diameter"] = diam.to_string();
  report.summary["max_distance"] = largest.to_string();
  report.summary["min_max_distance"] = extreme.to_string();
  report.summary["lipschitz_checks"] = lipschitz_checks;
  report.summary["lipschitz_failures"] = lipschitz_failures;
  report.summary["witnesses_verified"] = witnesses;
  return report;
}

AuditReport metric_axiom_audit(const SpacePtr& space, const EnsembleSpec& spec, const MetricAuditOptions& options) {
  MetricAuditOptions o = options;
  o.distance.admissibility.seed = spec.seed;
  o.distance.admissibility.probes.seed = spec.seed;
  o.distance.axioms.seed = spec.seed;
  auto report = metric_axiom_audit(generate_ensemble(space, spec), o);
  report.summary["seed"] = spec.seed;
  return report;
}

std::vector<RiskMeasure> mixture_sequence(const SpacePtr& space, std::size_t a, std::size_t c, std::size_t count) {
  std::vector<RiskMeasure> out;
  for (std::size_t k = 1; k <= count; ++k) {
    const Real w(1, static_cast<std::int64_t>(k));
    out.push_back(RiskMeasure::mixture({Real(1) - w, w}, {RiskMeasure::dirac(space, a), RiskMeasure::dirac(space, c)}));
  }
  return out;
}

namespace {

struct ConvergenceData {
  std::vector<ConvergenceRow> rows;
  std::vector<std::pair<std::size_t, Values>> lipschitz_failures;
  bool flagged = false;
};

ConvergenceData compute_convergence(const std::vector<RiskMeasure>& sequence, const RiskMeasure& limit,
                                    const ConvergenceOptions& options) {
  const SpacePtr& space = limit.space();
  auto rng = Rng::stream(options.seed, "convergence");
  std::vector<Values> probe_set = probes::indicators(space->size());
  for (auto& f : probes::distance_functions(*space)) probe_set.push_back(std::move(f));
  for (auto& f : probes::random_functions(space->size(), options.random_probes, rng, -4, 4, 2)) probe_set.push_back(std::move(f));

  ConvergenceData out;
  out.rows.resize(sequence.size());
  const auto limit_support = support(limit, options.support).subset;
  Values at_limit(probe_set.size());
  for (std::size_t k = 0; k < probe_set.size(); ++k) at_limit[k] = limit(probe_set[k]);
  std::vector<std::vector<Values>> failing(sequence.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long long e = 0; e < static_cast<long long>(sequence.size()); ++e) {
    const std::size_t n = static_cast<std::size_t>(e);
    try {
      auto& row = out.rows[n];
      row.index = n + 1;
      row.distance = rho_O(sequence[n], limit, options.distance).value;
      row.gap = Real(0);
      for (std::size_t k = 0; k < probe_set.size(); ++k) {
        const Real a = sequence[n](probe_set[k]);
        row.gap = max(row.gap, abs(a - at_limit[k]));
        if (!lipschitz_holds(space, probe_set[k], a, at_limit[k], row.distance)) {
          row.lipschitz = false;
          failing[n].push_back(probe_set[k]);
        }
      }
      row.hausdorff = hausdorff_distance(support(sequence[n], options.support).subset, limit_support);
    } catch (...) {
#pragma omp critical
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t n = 0; n < sequence.size(); ++n)
    for (auto& phi : failing[n]) out.lipschitz_failures.emplace_back(n, std::move(phi));

  std::vector<Real> g, r, h;
  for (const auto& row : out.rows) {
    g.push_back(row.gap);
    r.push_back(row.distance);
    h.push_back(row.hausdorff);
  }
  out.flagged = tends(g) && (!tends(r) || !tends(h));
  return out;
}

Json sequence_payload(const std::vector<RiskMeasure>& sequence, const RiskMeasure& limit, const ConvergenceOptions& options) {
  Json p = base_payload(limit.space());
  p["seed"] = options.seed;
  p["random_probes"] = options.random_probes;
  p["limit"] = io::to_json(limit);
  p["sequence"] = Json::array();
  for (const auto& mu : sequence) p["sequence"].push_back(io::to_json(mu));
  return p;
}

}  // namespace

AuditReport convergence_audit(const std::vector<RiskMeasure>& sequence, const RiskMeasure& limit,
                              const ConvergenceOptions& options) {
  for (const auto& mu : sequence) require_same_space(mu.space(), limit.space(), "convergence_audit");
  AuditReport report;
  report.suite = "convergence";
  report.instances = sequence.size();
  const auto data = compute_convergence(sequence, limit, options);

  Json rows = Json::array();
  std::vector<Real> g, r, h;
  for (const auto& row : data.rows) {
    rows.push_back({{"n", row.index},
                    {"g", row.gap.to_string()},
                    {"r", row.distance.to_string()},
                    {"h", row.hausdorff.to_string()},
                    {"lipschitz", row.lipschitz}});
    g.push_back(row.gap);
    r.push_back(row.distance);
    h.push_back(row.hausdorff);
  }
  report.summary["rows"] = std::move(rows);
  report.summary["gap_tends_to_zero"] = tends(g);
  report.summary["distance_tends_to_zero"] = tends(r);
  report.summary["hausdorff_tends_to_zero"] = tends(h);
  report.summary["seed"] = options.seed;

  for (const auto& [n, phi] : data.lipschitz_failures) {
    Json p = base_payload(limit.space());
    p["seed"] = options.seed;
    p["mu1"] = io::to_json(sequence[n]);
    p["mu2"] = io::to_json(limit);
    p["phi"] = io::to_json(phi);
    p["distance"] = data.rows[n].distance.to_string();
    report.failures.push_back({"lipschitz", "term " + std::to_string(n + 1), sequence[n].is_capacity() && limit.is_capacity(),
                               std::move(p)});
  }
  if (data.flagged) {
    Json p = sequence_payload(sequence, limit, options);
    p["rows"] = report.summary["rows"];
    report.discrepancies.push_back({"convergence-discrepancy",
                                    "pointwise gaps shrink while the distance or the support gap does not",
                                    std::all_of(sequence.begin(), sequence.end(), [](const RiskMeasure& mu) { return mu.is_capacity(); }) &&
                                        limit.is_capacity(),
                                    std::move(p)});
  }
  return report;
}

std::vector<ConvergenceRow> convergence_rows(const AuditReport& report) {
  std::vector<ConvergenceRow> out;
  if (!report.summary.contains("rows")) return out;
  for (const auto& row : report.summary.at("rows")) {
    ConvergenceRow r;
    r.index = row.at("n").get<std::size_t>();
    r.gap = Real::parse(row.at("g").get<std::string>(), ArithmeticMode::Exact);
    r.distance = Real::parse(row.at("r").get<std::string>(), ArithmeticMode::Exact);
    r.hausdorff = Real::parse(row.at("h").get<std::string>(), ArithmeticMode::Exact);
    r.lipschitz = row.at("lipschitz").get<bool>();
    out.push_back(r);
  }
  return out;
}

bool reverify(const AuditFailure& failure) {
  try {
    const Json& p = failure.payload;
    if (failure.check.rfind("cross-check", 0) == 0) return oracles::reverify_cross_check(failure);
    const Loaded l = load(p);
    const DistanceOptions o = replay_options(p);
    if (failure.check == "convergence-discrepancy") {
      std::vector<RiskMeasure> seq;
      for (const auto& m : p.at("sequence")) seq.push_back(io::parse_measure(m, l.space, l.mode));
      ConvergenceOptions co;
      co.seed = p.value("seed", std::uint64_t{0});
      co.random_probes = p.value("random_probes", std::size_t{32});
      return compute_convergence(seq, io::parse_measure(p.at("limit"), l.space, l.mode), co).flagged;
    }
    const RiskMeasure mu1 = measure_at(p, "mu1", l);
    const RiskMeasure mu2 = measure_at(p, "mu2", l);
    if (failure.check == "symmetry") return !(rho_O(mu1, mu2, o).value == rho_O(mu2, mu1, o).value);
    if (failure.check == "identity") {
      const Real dist = rho_O(mu1, mu2, o).value;
      const auto eq = equal_measures(mu1, mu2);
      if (dist.is_zero()) {
        if (p.contains("witness")) {
          const Values w = io::parse_values(p.at("witness"), l.mode);
          return !approx_eq(mu1(w), mu2(w));
        }
        return eq.status == EqualityVerdict::Status::No;
      }
      return eq.status == EqualityVerdict::Status::Yes;
    }
    if (failure.check == "triangle") {
      const RiskMeasure mu3 = measure_at(p, "mu3", l);
      return !approx_le(rho_O(mu1, mu3, o).value, rho_O(mu1, mu2, o).value + rho_O(mu2, mu3, o).value);
    }
    if (failure.check == "diameter") {
      const Real dist = rho_O(mu1, mu2, o).value;
      if (p.value("kind", "bound") == "attainment") return !(dist == l.space->diameter());
      return !approx_le(dist, l.space->diameter());
    }
    if (failure.check == "lipschitz") {
      const Values phi = io::parse_values(p.at("phi"), l.mode);
      return !lipschitz_holds(l.space, phi, mu1(phi), mu2(phi), rho_O(mu1, mu2, o).value);
    }
    if (failure.check == "witness") {
      CouplingProbeOptions probes;
      probes.seed = p.value("seed", std::uint64_t{0});
      probes.random_probes = p.value("probes", std::size_t{16});
      return !witness_problem(rho_O(mu1, mu2, o), probes).empty();
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace riskmetric
