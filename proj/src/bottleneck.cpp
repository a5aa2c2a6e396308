#include "riskmetric/bottleneck.hpp"

#include <exception>

#include "riskmetric/error.hpp"

namespace riskmetric {

const char* to_string(DistanceResult::Certification certification) {
  return certification == DistanceResult::Certification::Exact ? "exact" : "bounds";
}

void require_axioms(const RiskMeasure& mu, const AxiomOptions& options, std::size_t index) {
  const auto report = verify_axioms(mu, options);
  if (report.pass) return;
  std::string what = "measure " + std::to_string(index) + " (" + (mu.name().empty() ? std::string(to_string(mu.kind())) : mu.name()) + ") fails ";
  what += to_string(report.violations.empty() ? Axiom::Monotonicity : report.violations.front().axiom);
  throw Error(ErrorKind::AxiomFailure, what, {index});
}

namespace {

Relation restricted(const Relation& s, Mask left, Mask right) {
  Relation out(s.left(), s.right());
  for (const auto& [i, j] : s.pairs())
    if (((left >> i) & 1U) && ((right >> j) & 1U)) out.set(i, j);
  return out;
}

DistanceResult ladder_search(const RiskMeasure& mu1, const RiskMeasure& mu2, const DistanceOptions& options) {
  const auto& space = mu1.space();
  const auto levels = distance_levels(*space);
  Mask supp1 = full_mask(space->size());
  Mask supp2 = supp1;
  if (options.restrict_to_supports) {
    supp1 = support(mu1, options.admissibility.support).subset.mask;
    supp2 = support(mu2, options.admissibility.support).subset.mask;
  }

  DistanceResult out;
  std::optional<std::size_t> first_open;  // first level not refuted
  for (std::size_t k = 0; k < levels.size(); ++k) {
    Relation s = sublevel_relation(space, levels[k]);
    if (options.restrict_to_supports) s = restricted(s, supp1, supp2);
    FeasibilityVerdict v = s.count() == 0 ? FeasibilityVerdict{FeasibilityVerdict::Status::Infeasible,
                                                               FeasibilityVerdict::Tier::RefutationSampled, {}, {}}
                                          : admissible(mu1, mu2, s, options.admissibility);
    out.ladder.push_back({levels[k], v.status, v.tier, false});
    if (!v.infeasible() && !first_open) first_open = k;
    if (!v.feasible()) continue;

    out.value = levels[k];
    out.upper = levels[k];
    out.lower = levels[*first_open];
    out.certification = *first_open == k ? DistanceResult::Certification::Exact : DistanceResult::Certification::Bounds;
    out.witness = std::move(v.witness);
    if (!out.witness) out.witness = CouplingWitness(mu1, mu2, s);
    for (std::size_t r = k + 1; r < levels.size(); ++r) out.ladder.push_back({levels[r], v.status, v.tier, true});
    return out;
  }
  // Only reachable when the top level stays undecided (sampled tiers).
  out.value = levels.back();
  out.upper = levels.back();
  out.lower = levels[first_open.value_or(levels.size() - 1)];
  out.certification = DistanceResult::Certification::Bounds;
  return out;
}

}  // namespace

DistanceResult rho_O(const RiskMeasure& mu1, const RiskMeasure& mu2, const DistanceOptions& options) {
  require_same_space(mu1.space(), mu2.space(), "rho_O");
  if (options.check_axioms) {
    require_axioms(mu1, options.axioms, 0);
    require_axioms(mu2, options.axioms, 1);
  }
  return ladder_search(mu1, mu2, options);
}

namespace {

DistanceMatrix run_matrix(const std::vector<RiskMeasure>& measures, const DistanceOptions& options, bool parallel) {
  const std::size_t m = measures.size();
  for (std::size_t i = 1; i < m; ++i) require_same_space(measures[0].space(), measures[i].space(), "distance_matrix");
  if (options.check_axioms)
    for (std::size_t i = 0; i < m; ++i) require_axioms(measures[i], options.axioms, i);

  DistanceOptions inner = options;
  inner.check_axioms = false;
  DistanceMatrix out(m, std::vector<DistanceResult>(m));
  const long long total = static_cast<long long>(m * m);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long e = 0; e < total; ++e) {
    const std::size_t i = static_cast<std::size_t>(e) / m;
    const std::size_t j = static_cast<std::size_t>(e) % m;
    try {
      out[i][j] = ladder_search(measures[i], measures[j], inner);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace

DistanceMatrix distance_matrix(const std::vector<RiskMeasure>& measures, const DistanceOptions& options) {
  return run_matrix(measures, options, true);
}

DistanceMatrix distance_matrix_serial(const std::vector<RiskMeasure>& measures, const DistanceOptions& options) {
  return run_matrix(measures, options, false);
}

}  // namespace riskmetric
