#include "riskmetric/space.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace riskmetric {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Asymmetry: return "Asymmetry";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::NegativeDistance: return "NegativeDistance";
    case ErrorKind::ZeroOffDiagonal: return "ZeroOffDiagonal";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::TooManyPoints: return "TooManyPoints";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::MarginalMismatch: return "MarginalMismatch";
    case ErrorKind::AxiomFailure: return "AxiomFailure";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

namespace {

std::uint64_t fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0xff;
  h *= 1099511628211ULL;
  return h;
}

std::uint64_t fingerprint_of(const std::vector<std::string>& labels, const Values& dist) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& l : labels) h = fnv1a(h, l);
  for (const auto& d : dist) h = fnv1a(h, d.to_string());
  return h;
}

std::string idx(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

SpacePtr FiniteMetricSpace::validate_metric(std::vector<std::string> labels, const std::vector<Values>& dist) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorKind::NotSquare, "metric space needs at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw Error(ErrorKind::NotSquare, "row " + std::to_string(i) + " has wrong length", {i});
  }
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  }
  if (labels.size() != n) throw Error(ErrorKind::NotSquare, "label count does not match the matrix size");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.insert(labels[i]).second) throw Error(ErrorKind::DuplicateLabel, "label '" + labels[i] + "'", {i});
  }
  bool exact = true;
  for (const auto& row : dist)
    for (const auto& d : row) exact = exact && d.is_exact();
  const std::size_t cap = exact ? kMaxExactPoints : kMaxFloatPoints;
  if (n > cap) {
    throw Error(ErrorKind::TooManyPoints, std::to_string(n) + " points exceeds the limit of " + std::to_string(cap));
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[i][j] < Real(0)) throw Error(ErrorKind::NegativeDistance, "entry " + idx(i, j), {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!approx_eq(dist[i][i], Real(0))) throw Error(ErrorKind::ZeroOffDiagonal, "nonzero diagonal entry " + idx(i, i), {i, i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!approx_eq(dist[i][j], dist[j][i])) throw Error(ErrorKind::Asymmetry, "entries " + idx(i, j), {i, j});
      if (!approx_lt(Real(0), dist[i][j])) throw Error(ErrorKind::ZeroOffDiagonal, "entry " + idx(i, j), {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!approx_le(dist[i][j], dist[i][k] + dist[k][j])) {
          throw Error(ErrorKind::TriangleViolation, "d" + idx(i, j) + " > d(i,k) + d(k,j) with k=" + std::to_string(k),
                      {i, j, k});
        }
      }
    }
  }

  auto space = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  space->labels_ = std::move(labels);
  space->dist_.reserve(n * n);
  for (const auto& row : dist)
    for (const auto& d : row) space->dist_.push_back(d);
  for (std::size_t i = 0; i < n; ++i) space->dist_[i * n + i] = Real(0).to_mode(exact ? ArithmeticMode::Exact : ArithmeticMode::Float);
  space->exact_ = exact;
  space->fingerprint_ = fingerprint_of(space->labels_, space->dist_);
  return space;
}

SpacePtr FiniteMetricSpace::product(const std::vector<SpacePtr>& factors) {
  if (factors.empty()) throw Error(ErrorKind::InvalidParams, "product of zero spaces");
  std::size_t n = 1;
  bool exact = true;
  for (const auto& f : factors) {
    n *= f->size();
    exact = exact && f->is_exact();
  }
  if (n > 64) throw Error(ErrorKind::TooManyPoints, "product space with " + std::to_string(n) + " points");

  auto space = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  space->factors_ = factors;
  space->exact_ = exact;
  space->labels_.resize(n);
  space->dist_.assign(n * n, Real(0));
  for (std::size_t p = 0; p < n; ++p) {
    const auto coords = space->decode(p);
    std::string label = "(";
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (k) label += ",";
      label += factors[k]->label(coords[k]);
    }
    space->labels_[p] = label + ")";
  }
  for (std::size_t p = 0; p < n; ++p) {
    const auto cp = space->decode(p);
    for (std::size_t q = 0; q < n; ++q) {
      const auto cq = space->decode(q);
      Real d(0);
      for (std::size_t k = 0; k < factors.size(); ++k) d = max(d, factors[k]->distance(cp[k], cq[k]));
      space->dist_[p * n + q] = d;
    }
  }
  space->fingerprint_ = fingerprint_of(space->labels_, space->dist_);
  return space;
}

std::optional<std::size_t> FiniteMetricSpace::index_of(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Real FiniteMetricSpace::diameter() const {
  Real d(0);
  for (const auto& v : dist_) d = max(d, v);
  return d;
}

std::vector<std::size_t> FiniteMetricSpace::decode(std::size_t index) const {
  std::vector<std::size_t> coords(factors_.size());
  for (std::size_t k = factors_.size(); k-- > 0;) {
    coords[k] = index % factors_[k]->size();
    index /= factors_[k]->size();
  }
  return coords;
}

std::size_t FiniteMetricSpace::encode(std::span<const std::size_t> coords) const {
  std::size_t index = 0;
  for (std::size_t k = 0; k < factors_.size(); ++k) index = index * factors_[k]->size() + coords[k];
  return index;
}

bool FiniteMetricSpace::same_as(const FiniteMetricSpace& other) const {
  if (this == &other) return true;
  return fingerprint_ == other.fingerprint_ && labels_ == other.labels_ && dist_ == other.dist_;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context) {
  if (!same_space(a, b)) throw Error(ErrorKind::SpaceMismatch, context);
}

PointFunction::PointFunction(SpacePtr s, Values v) : space(std::move(s)), values(std::move(v)) {
  if (!space || values.size() != space->size()) {
    throw Error(ErrorKind::SpaceMismatch, "point function length does not match the space");
  }
}

PointFunction PointFunction::constant(SpacePtr s, const Real& c) {
  const std::size_t n = s->size();
  return PointFunction(std::move(s), Values(n, c));
}

std::size_t PointSubset::count() const { return static_cast<std::size_t>(std::popcount(mask)); }

std::string PointSubset::to_string() const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < space->size(); ++i) {
    if (!contains(i)) continue;
    if (!first) out += ",";
    out += space->label(i);
    first = false;
  }
  return out + "}";
}

Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

Relation::Relation(SpacePtr left, SpacePtr right)
    : left_(std::move(left)), right_(std::move(right)), rows_(left_->size()), cols_(right_->size()),
      cells_(rows_ * cols_, 0) {}

Relation Relation::diagonal(const SpacePtr& space) {
  Relation r(space, space);
  for (std::size_t i = 0; i < space->size(); ++i) r.set(i, i);
  return r;
}

Relation Relation::full(SpacePtr left, SpacePtr right) {
  Relation r(std::move(left), std::move(right));
  std::fill(r.cells_.begin(), r.cells_.end(), 1);
  return r;
}

Mask Relation::section(std::size_t i) const {
  Mask m = 0;
  for (std::size_t j = 0; j < cols_; ++j)
    if (contains(i, j)) m |= Mask{1} << j;
  return m;
}

Mask Relation::cosection(std::size_t j) const {
  Mask m = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    if (contains(i, j)) m |= Mask{1} << i;
  return m;
}

Mask Relation::left_projection() const {
  Mask m = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    if (section(i) != 0) m |= Mask{1} << i;
  return m;
}

Mask Relation::right_projection() const {
  Mask m = 0;
  for (std::size_t j = 0; j < cols_; ++j)
    if (cosection(j) != 0) m |= Mask{1} << j;
  return m;
}

std::size_t Relation::count() const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), 1));
}

Relation Relation::transpose() const {
  Relation t(right_, left_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (contains(i, j)) t.set(j, i);
  return t;
}

Relation Relation::compose(const Relation& other) const {
  require_same_space(right_, other.left_, "relation composition");
  Relation out(left_, other.right_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!contains(i, j)) continue;
      for (std::size_t k = 0; k < other.cols_; ++k)
        if (other.contains(j, k)) out.set(i, k);
    }
  return out;
}

Relation Relation::intersect(const Relation& other) const {
  Relation out(left_, right_);
  for (std::size_t c = 0; c < cells_.size(); ++c) out.cells_[c] = cells_[c] && other.cells_.at(c);
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  for (std::size_t c = 0; c < cells_.size(); ++c)
    if (cells_[c] && !other.cells_.at(c)) return false;
  return true;
}

Real Relation::max_distance() const {
  require_same_space(left_, right_, "max_distance on a heterogeneous relation");
  Real d(0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (contains(i, j)) d = max(d, left_->distance(i, j));
  return d;
}

std::vector<std::pair<std::size_t, std::size_t>> Relation::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (contains(i, j)) out.emplace_back(i, j);
  return out;
}

Relation sublevel_relation(const SpacePtr& space, const Real& t) {
  Relation r(space, space);
  for (std::size_t i = 0; i < space->size(); ++i)
    for (std::size_t j = 0; j < space->size(); ++j)
      if (i == j || approx_le(space->distance(i, j), t)) r.set(i, j);
  return r;
}

std::vector<Real> distance_levels(const FiniteMetricSpace& space) {
  std::vector<Real> levels{Real(0)};
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j) levels.push_back(space.distance(i, j));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(), [](const Real& a, const Real& b) { return approx_eq(a, b); }),
               levels.end());
  return levels;
}

Real hausdorff_distance(const PointSubset& a, const PointSubset& b) {
  require_same_space(a.space, b.space, "hausdorff_distance");
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySubset, "hausdorff_distance needs nonempty subsets");
  const auto& s = *a.space;
  auto directed = [&](const PointSubset& from, const PointSubset& to) {
    Real worst(0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!from.contains(i)) continue;
      std::optional<Real> best;
      for (std::size_t j = 0; j < s.size(); ++j) {
        if (!to.contains(j)) continue;
        if (!best || s.distance(i, j) < *best) best = s.distance(i, j);
      }
      worst = max(worst, *best);
    }
    return worst;
  };
  return max(directed(a, b), directed(b, a));
}

Real modulus_of_continuity(const PointFunction& phi, const Real& t) {
  const auto& s = *phi.space;
  Real worst(0);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (approx_le(s.distance(i, j), t)) worst = max(worst, abs(phi.values[i] - phi.values[j]));
  return worst;
}

}  // namespace riskmetric
