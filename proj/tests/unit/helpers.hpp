#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "riskmetric/io.hpp"
#include "riskmetric/probes.hpp"

namespace riskmetric {
inline void PrintTo(const Real& r, std::ostream* os) { *os << r.to_string(); }
}  // namespace riskmetric

namespace testing_support {

using namespace riskmetric;

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline SpacePtr fixture_space(const std::string& name) {
  return io::parse_space(io::parse_text(io::read_source(fixture_path(name))), ArithmeticMode::Exact);
}

inline SpacePtr p3() { return fixture_space("p3.json"); }

inline SpacePtr line_space(std::initializer_list<int> positions) {
  std::vector<int> pos(positions);
  std::vector<std::string> labels;
  std::vector<Values> dist(pos.size(), Values(pos.size()));
  for (std::size_t i = 0; i < pos.size(); ++i) {
    labels.push_back("x" + std::to_string(i));
    for (std::size_t j = 0; j < pos.size(); ++j) dist[i][j] = Real(std::abs(pos[i] - pos[j]));
  }
  return FiniteMetricSpace::validate_metric(labels, dist);
}

inline Real q(std::int64_t num, std::int64_t den = 1) { return Real(num, den); }

inline Values vals(std::initializer_list<Real> v) { return Values(v); }

}  // namespace testing_support
