#include "riskmetric/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "riskmetric/error.hpp"

namespace riskmetric::io {

namespace {

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorKind::Parse, message); }

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string label_of(const Json& doc) {
  if (doc.is_string()) return doc.get<std::string>();
  if (doc.is_number_integer()) return std::to_string(doc.get<long long>());
  fail("point labels must be strings");
}

std::size_t point_index(const FiniteMetricSpace& space, const Json& doc) {
  const std::string label = label_of(doc);
  const auto idx = space.index_of(label);
  if (!idx) fail("unknown point '" + label + "'");
  return *idx;
}

ExtendedReal parse_extended(const Json& doc, ArithmeticMode mode) {
  if (doc.is_string()) {
    const auto text = doc.get<std::string>();
    if (text == "-inf") return ExtendedReal::neg_inf();
    if (text == "+inf" || text == "inf") return ExtendedReal::pos_inf();
  }
  return ExtendedReal::finite(parse_real(doc, mode));
}

Json extended_json(const ExtendedReal& x) {
  if (!x.is_finite()) return x.to_string();
  return to_json(x.value);
}

std::vector<RiskMeasure> parse_components(const Json& doc, const SpacePtr& space, ArithmeticMode mode) {
  const Json& list = field(doc, "components");
  if (!list.is_array() || list.empty()) fail("'components' must be a nonempty array");
  std::vector<RiskMeasure> out;
  for (const auto& c : list) out.push_back(parse_measure(c, space, mode));
  return out;
}

Capacity parse_capacity(const Json& doc, const SpacePtr& space, ArithmeticMode mode) {
  if (!doc.is_object()) fail("'capacity' must be an object keyed by subsets");
  const std::size_t n = space->size();
  if (n > kMaxExactPoints) fail("capacity tables need at most " + std::to_string(kMaxExactPoints) + " points");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::optional<Real>> given(size);
  given[0] = Real(0);
  for (const auto& [key, value] : doc.items()) given[parse_subset_key(*space, key)] = parse_real(value, mode);

  Values table(size);
  for (Mask s = 0; s < size; ++s) {
    if (given[s]) {
      table[s] = *given[s];
      continue;
    }
    if (mode == ArithmeticMode::Exact) fail("capacity entry for {" + subset_key(*space, s) + "} missing (exact mode needs the full table)");
    // Inner extension: the largest given value on a subset, 1 on the full set.
    Real best = s == full_mask(n) ? Real::inexact(1.0) : Real::inexact(0.0);
    for (Mask a = s; a; a = (a - 1) & s)
      if (given[a] && best < *given[a]) best = *given[a];
    table[s] = best;
  }
  return Capacity::unchecked(space, std::move(table));
}

}  // namespace

Real parse_real(const Json& value, ArithmeticMode mode) {
  try {
    if (value.is_number_integer()) {
      Real r(static_cast<long long>(value.get<std::int64_t>()));
      return r.to_mode(mode);
    }
    if (value.is_number_unsigned()) {
      const auto u = value.get<std::uint64_t>();
      if (u > static_cast<std::uint64_t>(INT64_MAX)) fail("integer out of range");
      return Real(static_cast<long long>(u)).to_mode(mode);
    }
    if (value.is_number_float()) {
      const double d = value.get<double>();
      if (mode == ArithmeticMode::Float) return Real::inexact(d);
      char buf[64];
      const auto res = std::to_chars(buf, buf + sizeof buf, d);
      return Real::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)), mode);
    }
    if (value.is_string()) return Real::parse(value.get<std::string>(), mode);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(e.what());
  }
  fail("expected a number or a \"p/q\" string, got " + value.dump());
}

Json to_json(const Real& value) {
  if (!value.is_exact()) return value.to_double();
  if (value.rational().is_integer()) return value.rational().num();
  return value.to_string();
}

SpacePtr parse_space(const Json& doc, ArithmeticMode mode) {
  const Json& d = field(doc, "dist");
  if (!d.is_array()) fail("'dist' must be an array of rows");
  std::vector<Values> dist;
  for (const auto& row : d) {
    if (!row.is_array()) fail("'dist' rows must be arrays");
    Values r;
    for (const auto& v : row) r.push_back(parse_real(v, mode));
    dist.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (doc.contains("points")) {
    const Json& p = doc.at("points");
    if (!p.is_array()) fail("'points' must be an array");
    for (const auto& l : p) labels.push_back(label_of(l));
    if (labels.size() != dist.size()) throw Error(ErrorKind::NotSquare, "label count differs from the matrix size");
  }
  return FiniteMetricSpace::validate_metric(std::move(labels), dist);
}

Json to_json(const FiniteMetricSpace& space) {
  Json out;
  out["points"] = space.labels();
  Json rows = Json::array();
  for (std::size_t i = 0; i < space.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < space.size(); ++j) row.push_back(to_json(space.distance(i, j)));
    rows.push_back(std::move(row));
  }
  out["dist"] = std::move(rows);
  return out;
}

std::string subset_key(const FiniteMetricSpace& space, Mask subset) {
  std::string out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!((subset >> i) & 1U)) continue;
    if (!out.empty()) out += ',';
    out += space.label(i);
  }
  return out;
}

Mask parse_subset_key(const FiniteMetricSpace& space, std::string_view key) {
  Mask out = 0;
  if (key.empty()) return 0;
  // Product labels such as "(a,b)" contain commas; split only at depth zero.
  int depth = 0;
  std::size_t start = 0;
  auto take = [&](std::size_t end) {
    std::string label(key.substr(start, end - start));
    while (!label.empty() && label.front() == ' ') label.erase(label.begin());
    while (!label.empty() && label.back() == ' ') label.pop_back();
    const auto idx = space.index_of(label);
    if (!idx) fail("unknown point '" + label + "' in capacity key '" + std::string(key) + "'");
    const Mask b = Mask{1} << *idx;
    if (out & b) fail("repeated point in capacity key '" + std::string(key) + "'");
    out |= b;
  };
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (key[i] == '(') ++depth;
    if (key[i] == ')') --depth;
    if (key[i] == ',' && depth == 0) {
      take(i);
      start = i + 1;
    }
  }
  take(key.size());
  return out;
}

RiskMeasure parse_measure(const Json& doc, const SpacePtr& space, ArithmeticMode mode) {
  const std::string type = field(doc, "type").is_string() ? doc.at("type").get<std::string>() : "";
  const std::size_t n = space->size();
  auto probabilities = [&]() {
    Values p = parse_values(field(doc, "p"), mode);
    if (p.size() != n) fail("'p' needs one weight per point");
    return p;
  };
  try {
    if (type == "dirac") return RiskMeasure::dirac(space, point_index(*space, field(doc, "point")));
    if (type == "choquet") return RiskMeasure::choquet(parse_capacity(field(doc, "capacity"), space, mode));
    if (type == "expectation") return expectation(space, probabilities());
    if (type == "var") return var_quantile(space, probabilities(), parse_real(field(doc, "level"), mode));
    if (type == "cvar") return cvar(space, probabilities(), parse_real(field(doc, "level"), mode));
    if (type == "unanimity" || (type == "min" && !doc.contains("components"))) return unanimity_min(space);
    if (type == "possibility" || (type == "max" && !doc.contains("components"))) return possibility_max(space);
    if (type == "mixture") return RiskMeasure::mixture(parse_values(field(doc, "weights"), mode), parse_components(doc, space, mode));
    if (type == "max") return RiskMeasure::lattice_max(parse_components(doc, space, mode));
    if (type == "min") return RiskMeasure::lattice_min(parse_components(doc, space, mode));
    if (type == "two-point") {
      TwoPointParams p;
      const Json& alpha = field(doc, "alpha");
      const Json& lambda = field(doc, "lambda");
      if (!alpha.is_array() || alpha.size() != 4) fail("'alpha' needs 4 entries");
      if (!lambda.is_array() || lambda.size() != 4) fail("'lambda' needs 4 entries");
      for (std::size_t i = 0; i < 4; ++i) {
        p.alpha[i] = parse_real(alpha[i], mode);
        p.lambda[i] = parse_extended(lambda[i], mode);
      }
      if (doc.contains("f")) {
        const Json& knots = field(doc.at("f"), "knots");
        if (!knots.is_array() || knots.empty()) fail("'f.knots' must be a nonempty array");
        std::vector<std::pair<Real, Real>> k;
        for (const auto& pt : knots) {
          if (!pt.is_array() || pt.size() != 2) fail("each knot is a [t, f(t)] pair");
          k.emplace_back(parse_real(pt[0], mode), parse_real(pt[1], mode));
        }
        p.f = ShapeFunction(std::move(k));
      }
      return RiskMeasure::two_point(space, std::move(p));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(e.what());
  }
  fail("unknown measure type '" + type + "'");
}

Json to_json(const RiskMeasure& mu) {
  const auto& space = *mu.space();
  Json out;
  switch (mu.kind()) {
    case RiskMeasure::Kind::Dirac:
      out["type"] = "dirac";
      out["point"] = space.label(std::get<RiskMeasure::DiracRep>(mu.rep()).point);
      return out;
    case RiskMeasure::Kind::Choquet: {
      const auto& v = std::get<Capacity>(mu.rep());
      out["type"] = "choquet";
      Json table = Json::object();
      for (Mask s = 1; s <= full_mask(space.size()); ++s) table[subset_key(space, s)] = to_json(v[s]);
      out["capacity"] = std::move(table);
      return out;
    }
    case RiskMeasure::Kind::TwoPoint: {
      const auto& p = std::get<RiskMeasure::TwoPointRep>(mu.rep()).params;
      out["type"] = "two-point";
      out["alpha"] = Json::array();
      out["lambda"] = Json::array();
      for (std::size_t i = 0; i < 4; ++i) {
        out["alpha"].push_back(to_json(p.alpha[i]));
        out["lambda"].push_back(extended_json(p.lambda[i]));
      }
      Json knots = Json::array();
      for (const auto& [t, y] : p.f.knots()) knots.push_back(Json::array({to_json(t), to_json(y)}));
      out["f"]["knots"] = std::move(knots);
      return out;
    }
    case RiskMeasure::Kind::Mixture: {
      const auto& m = std::get<RiskMeasure::MixtureRep>(mu.rep());
      out["type"] = "mixture";
      out["weights"] = to_json(m.weights);
      out["components"] = Json::array();
      for (const auto& c : m.components) out["components"].push_back(to_json(c));
      return out;
    }
    case RiskMeasure::Kind::LatticeMax:
    case RiskMeasure::Kind::LatticeMin: {
      out["type"] = mu.kind() == RiskMeasure::Kind::LatticeMax ? "max" : "min";
      out["components"] = Json::array();
      for (const auto& c : std::get<RiskMeasure::LatticeRep>(mu.rep()).components) out["components"].push_back(to_json(c));
      return out;
    }
    case RiskMeasure::Kind::BlackBox:
      out["type"] = "black-box";
      out["name"] = mu.name();
      return out;
  }
  return out;
}

Relation parse_relation(const Json& doc, const SpacePtr& left, const SpacePtr& right) {
  if (!doc.is_array()) fail("a relation is an array of [x, y] pairs");
  Relation out(left, right);
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2) fail("a relation entry is an [x, y] pair");
    out.set(point_index(*left, pair[0]), point_index(*right, pair[1]));
  }
  return out;
}

Json to_json(const Relation& relation) {
  Json out = Json::array();
  for (const auto& [i, j] : relation.pairs())
    out.push_back(Json::array({relation.left()->label(i), relation.right()->label(j)}));
  return out;
}

Json to_json(const PointSubset& subset) {
  Json out = Json::array();
  for (std::size_t i = 0; i < subset.space->size(); ++i)
    if (subset.contains(i)) out.push_back(subset.space->label(i));
  return out;
}

Json to_json(const Values& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

Values parse_values(const Json& doc, ArithmeticMode mode) {
  if (!doc.is_array()) fail("expected an array of numbers");
  Values out;
  for (const auto& v : doc) out.push_back(parse_real(v, mode));
  return out;
}

Json to_json(const Violation& violation) {
  Json out;
  out["axiom"] = to_string(violation.axiom);
  out["functions"] = Json::array();
  for (const auto& f : violation.functions) out["functions"].push_back(to_json(f));
  out["values"] = to_json(violation.values);
  if (violation.branch_gap) out["branch_gap"] = true;
  if (violation.branch_overlap) out["branch_overlap"] = true;
  if (violation.table_entries)
    out["table_entries"] = Json::array({violation.table_entries->first, violation.table_entries->second});
  out["detail"] = violation.detail;
  return out;
}

Json to_json(const AxiomReport& report) {
  Json out;
  out["pass"] = report.pass;
  out["method"] = report.method == AxiomReport::Method::Exact ? "exact" : "sampled";
  if (report.method == AxiomReport::Method::Sampled) out["seed"] = report.seed;
  out["checks"] = report.count;
  out["violations"] = Json::array();
  for (const auto& v : report.violations) out["violations"].push_back(to_json(v));
  return out;
}

Json to_json(const CouplingWitness& witness) {
  Json out;
  out["formula"] = witness.formula_tag();
  out["support"] = to_json(witness.declared_support());
  out["marginals"] = Json::array({to_json(witness.left_marginal()), to_json(witness.right_marginal())});
  return out;
}

Json to_json(const Certificate& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  if (c.kind == Certificate::Kind::Support) {
    out["side"] = c.side == Side::Left ? "left" : "right";
    out["point"] = c.point;
  }
  if (!c.phi.empty()) out["phi"] = to_json(c.phi);
  if (!c.psi.empty()) out["psi"] = to_json(c.psi);
  out["lhs"] = to_json(c.lhs);
  out["rhs"] = to_json(c.rhs);
  return out;
}

Json to_json(const FeasibilityVerdict& verdict) {
  Json out;
  out["status"] = to_string(verdict.status);
  out["tier"] = to_string(verdict.tier);
  if (verdict.certificate) out["certificate"] = to_json(*verdict.certificate);
  if (verdict.witness) out["witness"] = to_json(*verdict.witness);
  return out;
}

Json to_json(const DistanceResult& result) {
  Json out;
  out["value"] = result.value.to_string();
  out["certification"] = to_string(result.certification);
  if (!result.exact()) out["interval"] = Json::array({result.lower.to_string(), result.upper.to_string()});
  out["ladder"] = Json::array();
  for (const auto& step : result.ladder) {
    Json s;
    s["threshold"] = step.threshold.to_string();
    s["verdict"] = to_string(step.status);
    s["tier"] = to_string(step.tier);
    if (step.implied) s["implied"] = true;
    out["ladder"].push_back(std::move(s));
  }
  if (result.witness) {
    Json w;
    w["formula"] = result.witness->formula_tag();
    w["support"] = to_json(result.witness->declared_support());
    out["witness"] = std::move(w);
  }
  return out;
}

std::string read_source(const std::string& path_or_inline) {
  const auto first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (path_or_inline[first] == '{' || path_or_inline[first] == '['))
    return path_or_inline;
  std::ifstream in(path_or_inline, std::ios::binary);
  if (!in) fail("cannot read '" + path_or_inline + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace riskmetric::io
