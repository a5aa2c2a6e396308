#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "riskmetric/bottleneck.hpp"
#include "riskmetric/coupling.hpp"
#include "riskmetric/measure.hpp"

namespace riskmetric::io {

using Json = nlohmann::ordered_json;

/// JSON numbers are read through their shortest decimal form, so 0.3 is 3/10
/// in exact mode. Strings may hold "p/q" or decimals.
Real parse_real(const Json& value, ArithmeticMode mode);
/// Integers stay JSON integers; other exact values become "p/q" strings.
Json to_json(const Real& value);

/// {"points": [...], "dist": [[...], ...]}. Throws Error(Parse) on shape
/// problems and the metric errors of validate_metric.
SpacePtr parse_space(const Json& doc, ArithmeticMode mode);
Json to_json(const FiniteMetricSpace& space);

/// Types: dirac, choquet, two-point, mixture, max, min, expectation, var,
/// cvar, unanimity, possibility. Capacities are parsed unchecked; the axiom
/// gate reports bad tables.
RiskMeasure parse_measure(const Json& doc, const SpacePtr& space, ArithmeticMode mode);
Json to_json(const RiskMeasure& mu);

/// "a,b" for a subset mask ("" for the empty set).
std::string subset_key(const FiniteMetricSpace& space, Mask subset);
Mask parse_subset_key(const FiniteMetricSpace& space, std::string_view key);

/// [[x, y], ...] by labels.
Relation parse_relation(const Json& doc, const SpacePtr& left, const SpacePtr& right);
Json to_json(const Relation& relation);

Json to_json(const PointSubset& subset);
Json to_json(const Values& values);
Values parse_values(const Json& doc, ArithmeticMode mode);

Json to_json(const Violation& violation);
Json to_json(const AxiomReport& report);
Json to_json(const CouplingWitness& witness);
Json to_json(const Certificate& certificate);
Json to_json(const FeasibilityVerdict& verdict);
Json to_json(const DistanceResult& result);

/// Reads a file, or treats the argument as inline JSON when it starts with '{' or '['.
std::string read_source(const std::string& path_or_inline);
Json parse_text(const std::string& text);

/// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view bytes);

}  // namespace riskmetric::io
