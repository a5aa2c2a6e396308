// Command-line front end. Exit codes: 0 ok/pass, 1 violation or counterexample,
// 2 malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "riskmetric/audit.hpp"
#include "riskmetric/error.hpp"
#include "riskmetric/io.hpp"
#include "riskmetric/oracles.hpp"

using namespace riskmetric;
using io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string space_path;
  std::vector<std::string> measure_sources;
  std::string limit_source;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  std::string out_path;
  std::string format = "json";
  // couple / oracle strassen
  std::string threshold;
  std::string relation;
  std::string p;
  std::string q;
  // audit / cross-check sizes
  std::size_t count = 100;
};

/// Input problems that map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  Json report;
  std::string text;
  std::string csv;
  int exit_code = 0;
};

class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {
    mode_ = cfg.mode == "float" ? ArithmeticMode::Float : ArithmeticMode::Exact;
  }

  ArithmeticMode mode() const { return mode_; }

  Json load(const std::string& source) {
    const std::string text = io::read_source(source);
    Json input;
    input["source"] = source.find_first_of("{[") == 0 ? "inline" : source;
    input["digest"] = io::digest(text);
    inputs_.push_back(std::move(input));
    return io::parse_text(text);
  }

  SpacePtr space() {
    if (space_) return space_;
    if (cfg_.space_path.empty()) throw InputError("--space is required");
    space_ = io::parse_space(load(cfg_.space_path), mode_);
    return space_;
  }

  std::vector<RiskMeasure> measures(const SpacePtr& on) {
    std::vector<RiskMeasure> out;
    for (const auto& src : cfg_.measure_sources) {
      const Json doc = load(src);
      if (doc.is_array()) {
        for (const auto& m : doc) out.push_back(io::parse_measure(m, on, mode_));
      } else {
        out.push_back(io::parse_measure(doc, on, mode_));
      }
    }
    return out;
  }

  Json envelope(const std::string& command, Json result) const {
    Json out;
    out["tool"] = "riskmetric";
    out["version"] = kVersion;
    out["command"] = command;
    out["mode"] = cfg_.mode;
    out["seed"] = cfg_.seed;
    out["inputs"] = inputs_;
    out["result"] = std::move(result);
    return out;
  }

 private:
  const RunConfig& cfg_;
  ArithmeticMode mode_;
  SpacePtr space_;
  Json inputs_ = Json::array();
};

void require_count(const std::vector<RiskMeasure>& ms, std::size_t k, const char* command) {
  if (ms.size() != k) throw InputError(std::string(command) + " needs exactly " + std::to_string(k) + " measures");
}

DistanceOptions distance_options(const RunConfig& cfg) {
  DistanceOptions o;
  o.admissibility.seed = cfg.seed;
  o.admissibility.probes.seed = cfg.seed;
  o.admissibility.support.seed = cfg.seed;
  o.axioms.seed = cfg.seed;
  return o;
}

std::string summary_line(const DistanceResult& r) {
  std::string out = r.value.to_string() + " (" + to_string(r.certification) + ")";
  if (!r.exact()) out += " interval [" + r.lower.to_string() + ", " + r.upper.to_string() + "]";
  return out;
}

Output cmd_validate(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto ms = s.measures(space);
  Output out;
  Json list = Json::array();
  AxiomOptions o;
  o.seed = cfg.seed;
  bool pass = true;
  std::ostringstream text;
  text << "space: " << space->size() << " points, valid\n";
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto report = verify_axioms(ms[i], o);
    pass = pass && report.pass;
    Json entry;
    entry["index"] = i;
    entry["type"] = to_string(ms[i].kind());
    entry["axioms"] = io::to_json(report);
    list.push_back(std::move(entry));
    text << "measure " << i << " (" << to_string(ms[i].kind()) << "): " << (report.pass ? "pass" : "FAIL");
    if (!report.pass) {
      const auto& v = report.violations.front();
      text << " " << to_string(v.axiom) << ": " << v.detail;
      for (const auto& f : v.functions) text << " " << io::to_json(f).dump();
    }
    text << "\n";
  }
  Json result;
  result["space"] = {{"points", space->size()}, {"valid", true}};
  result["measures"] = std::move(list);
  result["pass"] = pass;
  out.report = s.envelope("validate", std::move(result));
  out.text = text.str();
  out.exit_code = pass ? 0 : 1;
  return out;
}

Output cmd_distance(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto ms = s.measures(space);
  require_count(ms, 2, "distance");
  const auto r = rho_O(ms[0], ms[1], distance_options(cfg));
  Output out;
  out.report = s.envelope("distance", io::to_json(r));
  std::ostringstream text;
  text << summary_line(r) << "\n";
  for (const auto& step : r.ladder)
    text << "  t=" << step.threshold.to_string() << " " << to_string(step.status) << " [" << to_string(step.tier)
         << (step.implied ? ", implied" : "") << "]\n";
  if (r.witness) text << "witness: " << r.witness->formula_tag() << ", " << r.witness->declared_support().count() << " support pairs\n";
  out.text = text.str();
  out.csv = "value,certification,lower,upper\n" + r.value.to_string() + "," + to_string(r.certification) + "," +
            r.lower.to_string() + "," + r.upper.to_string() + "\n";
  return out;
}

Output cmd_matrix(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto ms = s.measures(space);
  if (ms.empty()) throw InputError("matrix needs at least one measure");
  const auto d = distance_matrix(ms, distance_options(cfg));
  Output out;
  Json values = Json::array();
  Json tiers = Json::array();
  std::ostringstream csv, text;
  bool exact = true, symmetric = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    Json row = Json::array(), cert = Json::array();
    for (std::size_t j = 0; j < ms.size(); ++j) {
      row.push_back(d[i][j].value.to_string());
      cert.push_back(to_string(d[i][j].certification));
      exact = exact && d[i][j].exact();
      symmetric = symmetric && d[i][j].value == d[j][i].value;
      csv << (j ? "," : "") << d[i][j].value.to_string();
      text << (j ? " " : "") << d[i][j].value.to_string();
    }
    csv << "\n";
    text << "\n";
    values.push_back(std::move(row));
    tiers.push_back(std::move(cert));
  }
  Json result;
  result["values"] = std::move(values);
  result["certification"] = std::move(tiers);
  result["all_exact"] = exact;
  result["symmetric"] = symmetric;
  out.report = s.envelope("matrix", std::move(result));
  out.csv = csv.str();
  out.text = text.str();
  return out;
}

Output cmd_audit_metric(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  auto ms = s.measures(space);
  MetricAuditOptions o;
  o.distance = distance_options(cfg);
  AuditReport report;
  if (ms.empty()) {
    EnsembleSpec spec;
    spec.count = cfg.count;
    spec.seed = cfg.seed;
    report = metric_axiom_audit(space, spec, o);
  } else {
    report = metric_axiom_audit(ms, o);
  }
  Output out;
  out.report = s.envelope("audit metric", to_json(report));
  std::ostringstream text;
  text << report.suite << ": " << (report.pass() ? "pass" : "FAIL") << " (" << report.instances << " measures)\n";
  for (const auto& f : report.failures) text << "  " << f.check << ": " << f.detail << "\n";
  out.text = text.str();
  out.exit_code = report.pass() ? 0 : 1;
  return out;
}

Output cmd_converge(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto seq = s.measures(space);
  if (seq.empty()) throw InputError("converge needs the sequence as --measure inputs");
  if (cfg.limit_source.empty()) throw InputError("converge needs --limit");
  const auto limit = io::parse_measure(s.load(cfg.limit_source), space, s.mode());
  ConvergenceOptions o;
  o.distance = distance_options(cfg);
  o.seed = cfg.seed;
  o.support.seed = cfg.seed;
  const auto report = convergence_audit(seq, limit, o);
  Output out;
  out.report = s.envelope("converge", to_json(report));
  std::ostringstream csv, text;
  csv << "n,g,r,h,lipschitz\n";
  for (const auto& row : convergence_rows(report))
    csv << row.index << "," << row.gap.to_string() << "," << row.distance.to_string() << "," << row.hausdorff.to_string()
        << "," << (row.lipschitz ? "ok" : "violated") << "\n";
  text << csv.str();
  if (!report.discrepancies.empty()) text << "DISCREPANCY: " << report.discrepancies.front().detail << "\n";
  out.csv = csv.str();
  out.text = text.str();
  out.exit_code = report.pass() ? 0 : 1;
  return out;
}

Relation relation_from(const RunConfig& cfg, Session& s, const SpacePtr& space) {
  if (!cfg.relation.empty()) return io::parse_relation(s.load(cfg.relation), space, space);
  if (cfg.threshold.empty()) throw InputError("give --threshold or --relation");
  try {
    return sublevel_relation(space, Real::parse(cfg.threshold, s.mode()));
  } catch (const std::exception& e) {
    throw InputError(std::string("bad --threshold: ") + e.what());
  }
}

Output cmd_couple(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto ms = s.measures(space);
  require_count(ms, 2, "couple");
  const Relation rel = relation_from(cfg, s, space);
  AdmissibilityOptions o = distance_options(cfg).admissibility;
  const auto v = admissible(ms[0], ms[1], rel, o);
  Json result = io::to_json(v);
  bool witness_ok = true;
  if (v.witness) {
    CouplingProbeOptions po;
    po.seed = cfg.seed;
    const auto report = verify_coupling(*v.witness, po);
    witness_ok = report.pass;
    result["witness_check"] = io::to_json(report);
  }
  Output out;
  out.report = s.envelope("couple", std::move(result));
  out.text = std::string(to_string(v.status)) + " (" + to_string(v.tier) + ")\n";
  out.exit_code = witness_ok ? 0 : 1;
  return out;
}

Output cmd_glue(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto square = FiniteMetricSpace::product(space, space);
  const auto ms = s.measures(square);
  require_count(ms, 2, "glue");
  Output out;
  Json result;
  EqualityOptions eq;
  eq.seed = cfg.seed;
  try {
    const auto xi = glue(ms[0], ms[1], eq);
    CouplingProbeOptions po;
    po.seed = cfg.seed;
    const auto report = verify_glue(xi, ms[0], ms[1], po);
    result["glued"] = io::to_json(xi);
    result["projection_check"] = io::to_json(report);
    out.text = std::string("glued on ") + std::to_string(xi.space()->size()) + " points; projections " +
               (report.pass ? "pass" : "FAIL") + "\n";
    out.exit_code = report.pass ? 0 : 1;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::MarginalMismatch) throw;
    const auto check = glue_marginal_check(ms[0], ms[1], eq);
    result["error"] = e.what();
    if (check.witness) result["separating_function"] = io::to_json(*check.witness);
    out.text = std::string(e.what()) + "\n";
    out.exit_code = 1;
  }
  out.report = s.envelope("glue", std::move(result));
  return out;
}

oracles::ProbabilityVector probability(Session& s, const SpacePtr& space, const std::string& src, const char* flag) {
  if (src.empty()) throw InputError(std::string("missing --") + flag);
  return oracles::ProbabilityVector(space, io::parse_values(s.load(src), s.mode()));
}

Output cmd_oracle_strassen(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto p = probability(s, space, cfg.p, "p");
  const auto q = probability(s, space, cfg.q, "q");
  const Relation rel = relation_from(cfg, s, space);
  const bool hall = oracles::strassen_exhaustive(p, q, rel);
  const bool flow = oracles::strassen_flow(p, q, rel);
  Json result{{"hall", hall}, {"flow", flow}, {"agree", hall == flow}, {"feasible", hall && flow}};
  Output out;
  out.report = s.envelope("oracle strassen", std::move(result));
  out.text = std::string(hall ? "feasible" : "infeasible") + (hall == flow ? "" : " (methods disagree)") + "\n";
  out.exit_code = hall == flow ? 0 : 1;
  return out;
}

Output cmd_oracle_winf(const RunConfig& cfg) {
  Session s(cfg);
  const auto space = s.space();
  const auto p = probability(s, space, cfg.p, "p");
  const auto q = probability(s, space, cfg.q, "q");
  const Real d = oracles::winf_distance(p, q);
  Output out;
  out.report = s.envelope("oracle winf", Json{{"value", d.to_string()}});
  out.text = d.to_string() + "\n";
  out.csv = "value\n" + d.to_string() + "\n";
  return out;
}

Output cmd_oracle_cross_check(const RunConfig& cfg) {
  Session s(cfg);
  oracles::CrossCheckOptions o;
  o.seed = cfg.seed;
  o.additive_instances = cfg.count;
  o.choquet_instances = cfg.count;
  o.dirac_instances = cfg.count / 2;
  const auto report = oracles::criterion_cross_check(o);
  Output out;
  out.report = s.envelope("oracle cross-check", to_json(report));
  out.text = report.suite + ": " + (report.pass() ? "pass" : "FAIL") + " (" + std::to_string(report.instances) + " instances, " +
             std::to_string(report.failures.size()) + " disagreements)\n";
  out.exit_code = report.pass() ? 0 : 1;
  return out;
}

void emit(const Output& out, const RunConfig& cfg) {
  std::string body;
  if (cfg.format == "json") body = out.report.dump(2) + "\n";
  else if (cfg.format == "csv") body = out.csv.empty() ? out.report.dump(2) + "\n" : out.csv;
  else body = out.text;
  if (cfg.out_path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out_path + "'");
  f << body;
}

int report_error(const std::string& message, int code) {
  std::cerr << "error: " << message << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bottleneck coupling distances between risk measures on finite metric spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool needs_space = true) {
    if (needs_space) sub->add_option("--space", cfg.space_path, "space JSON file or inline JSON");
    sub->add_option("--measure", cfg.measure_sources, "measure JSON (file or inline; arrays allowed); repeatable");
    sub->add_option("--seed", cfg.seed, "seed for every sampled check");
    sub->add_option("--mode", cfg.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--out", cfg.out_path, "write the report here instead of stdout");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  };

  std::function<Output(const RunConfig&)> handler;
  auto bind = [&](CLI::App* sub, Output (*fn)(const RunConfig&)) {
    sub->callback([&handler, fn]() { handler = fn; });
  };

  auto* validate = app.add_subcommand("validate", "check the space and the measure axioms");
  common(validate);
  bind(validate, cmd_validate);

  auto* distance = app.add_subcommand("distance", "bottleneck distance between two measures");
  common(distance);
  bind(distance, cmd_distance);

  auto* matrix = app.add_subcommand("matrix", "pairwise distance matrix");
  common(matrix);
  bind(matrix, cmd_matrix);

  auto* audit = app.add_subcommand("audit", "property audits");
  audit->require_subcommand(1);
  auto* metric = audit->add_subcommand("metric", "metric axioms over an ensemble or the given measures");
  common(metric);
  metric->add_option("--count", cfg.count, "ensemble size when no measures are given");
  bind(metric, cmd_audit_metric);

  auto* converge = app.add_subcommand("converge", "pointwise vs metric vs support convergence of a sequence");
  common(converge);
  converge->add_option("--limit", cfg.limit_source, "limit measure JSON")->required();
  bind(converge, cmd_converge);

  auto* couple = app.add_subcommand("couple", "coupling feasibility on a relation");
  common(couple);
  couple->add_option("--threshold", cfg.threshold, "use the sublevel relation {dist <= t}");
  couple->add_option("--relation", cfg.relation, "explicit relation as [[x, y], ...]");
  bind(couple, cmd_couple);

  auto* glue_cmd = app.add_subcommand("glue", "glue measures on X x X sharing the middle marginal");
  common(glue_cmd);
  bind(glue_cmd, cmd_glue);

  auto* oracle = app.add_subcommand("oracle", "independent reference computations");
  oracle->require_subcommand(1);
  auto* strassen = oracle->add_subcommand("strassen", "Hall and flow feasibility for probability vectors");
  common(strassen);
  strassen->add_option("--p", cfg.p, "left weights (JSON array)");
  strassen->add_option("--q", cfg.q, "right weights (JSON array)");
  strassen->add_option("--threshold", cfg.threshold, "use the sublevel relation {dist <= t}");
  strassen->add_option("--relation", cfg.relation, "explicit relation as [[x, y], ...]");
  bind(strassen, cmd_oracle_strassen);
  auto* winf = oracle->add_subcommand("winf", "bottleneck transport distance between probability vectors");
  common(winf);
  winf->add_option("--p", cfg.p, "left weights (JSON array)");
  winf->add_option("--q", cfg.q, "right weights (JSON array)");
  bind(winf, cmd_oracle_winf);
  auto* cross = oracle->add_subcommand("cross-check", "admissibility criterion against the oracles");
  common(cross, false);
  cross->add_option("--count", cfg.count, "instances per ensemble");
  bind(cross, cmd_oracle_cross_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (!handler) return report_error("no command", 2);

  try {
    const Output out = handler(cfg);
    emit(out, cfg);
    return out.exit_code;
  } catch (const InputError& e) {
    return report_error(e.what(), 2);
  } catch (const Error& e) {
    // Axiom failures are violations; everything else is an input problem.
    return report_error(e.what(), e.kind() == ErrorKind::AxiomFailure ? 1 : 2);
  } catch (const ArithmeticOverflow& e) {
    return report_error(e.what(), 2);
  } catch (const std::exception& e) {
    return report_error(e.what(), 2);
  }
}
