#include "riskmetric/measure.hpp"

#include <algorithm>

namespace riskmetric {

const char* to_string(RiskMeasure::Kind kind) {
  switch (kind) {
    case RiskMeasure::Kind::Dirac: return "dirac";
    case RiskMeasure::Kind::Choquet: return "choquet";
    case RiskMeasure::Kind::TwoPoint: return "two-point";
    case RiskMeasure::Kind::Mixture: return "mixture";
    case RiskMeasure::Kind::LatticeMax: return "max";
    case RiskMeasure::Kind::LatticeMin: return "min";
    case RiskMeasure::Kind::BlackBox: return "black-box";
  }
  return "unknown";
}

namespace {

bool fits_capacity(const SpacePtr& space) {
  return space->size() <= (space->is_exact() ? kMaxExactPoints : kMaxFloatPoints);
}

void require_components(const std::vector<RiskMeasure>& components, const char* what) {
  if (components.empty()) throw Error(ErrorKind::InvalidParams, std::string(what) + " needs at least one component");
  for (const auto& c : components) require_same_space(components.front().space(), c.space(), what);
}

}  // namespace

RiskMeasure RiskMeasure::make(Kind kind, SpacePtr space, Rep rep) {
  auto node = std::make_shared<Node>(Node{std::move(space), std::move(rep), std::nullopt});
  if (fits_capacity(node->space)) {
    if (const auto* d = std::get_if<DiracRep>(&node->rep)) {
      Values table(std::size_t{1} << node->space->size(), Real(0));
      for (Mask b = 0; b < table.size(); ++b)
        if ((b >> d->point) & 1U) table[b] = Real(1);
      node->capacity = Capacity::unchecked(node->space, std::move(table));
    } else if (const auto* c = std::get_if<Capacity>(&node->rep)) {
      node->capacity = *c;
    } else if (const auto* m = std::get_if<MixtureRep>(&node->rep)) {
      const bool all = std::all_of(m->components.begin(), m->components.end(),
                                   [](const RiskMeasure& c) { return c.is_capacity(); });
      if (all) {
        Values table(std::size_t{1} << node->space->size(), Real(0));
        for (std::size_t k = 0; k < m->components.size(); ++k) {
          const auto& comp = *m->components[k].capacity();
          for (Mask b = 0; b < table.size(); ++b) table[b] += m->weights[k] * comp[b];
        }
        node->capacity = Capacity::unchecked(node->space, std::move(table));
      }
    }
  }
  return RiskMeasure(kind, std::move(node));
}

RiskMeasure RiskMeasure::dirac(SpacePtr space, std::size_t point) {
  if (point >= space->size()) throw Error(ErrorKind::InvalidParams, "dirac point out of range", {point});
  return make(Kind::Dirac, std::move(space), DiracRep{point});
}

RiskMeasure RiskMeasure::choquet(Capacity capacity) {
  auto space = capacity.space();
  return make(Kind::Choquet, std::move(space), std::move(capacity));
}

RiskMeasure RiskMeasure::two_point(SpacePtr space, TwoPointParams params) {
  if (space->size() != 2) throw Error(ErrorKind::SpaceMismatch, "two-point family needs a 2-point space");
  params.validate();
  return make(Kind::TwoPoint, std::move(space), TwoPointRep{std::move(params)});
}

RiskMeasure RiskMeasure::mixture(Values weights, std::vector<RiskMeasure> components) {
  require_components(components, "mixture");
  if (weights.size() != components.size()) throw Error(ErrorKind::InvalidParams, "mixture weight count");
  Real sum(0);
  for (const auto& w : weights) {
    if (w < Real(0)) throw Error(ErrorKind::InvalidParams, "mixture weights must be nonnegative");
    sum += w;
  }
  if (!approx_eq(sum, Real(1))) throw Error(ErrorKind::InvalidParams, "mixture weights must sum to 1");
  auto space = components.front().space();
  return make(Kind::Mixture, std::move(space), MixtureRep{std::move(weights), std::move(components)});
}

RiskMeasure RiskMeasure::lattice_max(std::vector<RiskMeasure> components) {
  require_components(components, "max");
  auto space = components.front().space();
  return make(Kind::LatticeMax, std::move(space), LatticeRep{std::move(components)});
}

RiskMeasure RiskMeasure::lattice_min(std::vector<RiskMeasure> components) {
  require_components(components, "min");
  auto space = components.front().space();
  return make(Kind::LatticeMin, std::move(space), LatticeRep{std::move(components)});
}

RiskMeasure RiskMeasure::black_box(SpacePtr space, Evaluator evaluator, std::string name) {
  if (!space) throw Error(ErrorKind::InvalidParams, "black-box measures must declare their space");
  return make(Kind::BlackBox, std::move(space), BlackBoxRep{std::move(evaluator), std::move(name)});
}

const std::string& RiskMeasure::name() const {
  static const std::string empty;
  if (const auto* b = std::get_if<BlackBoxRep>(&node_->rep)) return b->name;
  return empty;
}

Real RiskMeasure::eval(std::span<const Real> phi, EvalTrace* trace) const {
  if (phi.size() != space()->size()) throw Error(ErrorKind::SpaceMismatch, "function length does not match the space");
  switch (kind_) {
    case Kind::Dirac:
      return phi[std::get<DiracRep>(node_->rep).point];
    case Kind::Choquet:
      return choquet_eval(std::get<Capacity>(node_->rep), phi);
    case Kind::TwoPoint: {
      const auto v = two_point_eval(std::get<TwoPointRep>(node_->rep).params, phi);
      if (trace) {
        trace->branch_gap = trace->branch_gap || v.branch_gap;
        trace->branch_overlap = trace->branch_overlap || v.branch_overlap;
      }
      return v.value;
    }
    case Kind::Mixture: {
      if (node_->capacity) return choquet_eval(*node_->capacity, phi);
      const auto& m = std::get<MixtureRep>(node_->rep);
      Real total(0);
      for (std::size_t k = 0; k < m.components.size(); ++k) total += m.weights[k] * m.components[k].eval(phi, trace);
      return total;
    }
    case Kind::LatticeMax:
    case Kind::LatticeMin: {
      const auto& l = std::get<LatticeRep>(node_->rep);
      Real best = l.components.front().eval(phi, trace);
      for (std::size_t k = 1; k < l.components.size(); ++k) {
        const Real v = l.components[k].eval(phi, trace);
        best = kind_ == Kind::LatticeMax ? max(best, v) : min(best, v);
      }
      return best;
    }
    case Kind::BlackBox:
      return std::get<BlackBoxRep>(node_->rep).evaluator(phi);
  }
  return Real(0);
}

Real evaluate(const RiskMeasure& mu, const PointFunction& phi) {
  require_same_space(mu.space(), phi.space, "evaluate");
  return mu(phi.values);
}

RiskMeasure expectation(const SpacePtr& space, const Values& p) {
  return RiskMeasure::choquet(Capacity::expectation(space, p));
}
RiskMeasure var_quantile(const SpacePtr& space, const Values& p, const Real& level) {
  return RiskMeasure::choquet(Capacity::var_quantile(space, p, level));
}
RiskMeasure cvar(const SpacePtr& space, const Values& p, const Real& level) {
  return RiskMeasure::choquet(Capacity::cvar(space, p, level));
}
RiskMeasure unanimity_min(const SpacePtr& space) { return RiskMeasure::choquet(Capacity::unanimity(space)); }
RiskMeasure possibility_max(const SpacePtr& space) { return RiskMeasure::choquet(Capacity::possibility(space)); }

PointMap::PointMap(SpacePtr from, SpacePtr to, std::vector<std::size_t> img)
    : source(std::move(from)), target(std::move(to)), image(std::move(img)) {
  if (image.size() != source->size()) throw Error(ErrorKind::InvalidParams, "point map must be total on the source");
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] >= target->size()) throw Error(ErrorKind::InvalidParams, "point map image out of range", {i});
  }
}

PointMap PointMap::identity(const SpacePtr& space) {
  std::vector<std::size_t> img(space->size());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = i;
  return PointMap(space, space, std::move(img));
}

PointMap PointMap::projection(const SpacePtr& product, std::vector<std::size_t> factors) {
  if (!product->is_product()) throw Error(ErrorKind::SpaceMismatch, "projection needs a product space");
  std::vector<SpacePtr> parts;
  for (auto f : factors) parts.push_back(product->factors().at(f));
  SpacePtr target = parts.size() == 1 ? parts.front() : FiniteMetricSpace::product(parts);
  std::vector<std::size_t> img(product->size());
  std::vector<std::size_t> sub(factors.size());
  for (std::size_t p = 0; p < product->size(); ++p) {
    const auto coords = product->decode(p);
    for (std::size_t k = 0; k < factors.size(); ++k) sub[k] = coords[factors[k]];
    img[p] = parts.size() == 1 ? sub.front() : target->encode(sub);
  }
  return PointMap(product, std::move(target), std::move(img));
}

Values PointMap::pull_back(std::span<const Real> phi) const {
  Values out(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) out[i] = phi[image[i]];
  return out;
}

Mask PointMap::image_of(Mask subset) const {
  Mask out = 0;
  for (std::size_t i = 0; i < image.size(); ++i)
    if ((subset >> i) & 1U) out |= Mask{1} << image[i];
  return out;
}

Mask PointMap::preimage_of(Mask subset) const {
  Mask out = 0;
  for (std::size_t i = 0; i < image.size(); ++i)
    if ((subset >> image[i]) & 1U) out |= Mask{1} << i;
  return out;
}

RiskMeasure pushforward(const PointMap& f, const RiskMeasure& mu) {
  require_same_space(f.source, mu.space(), "pushforward");
  if (mu.kind() == RiskMeasure::Kind::Dirac) {
    return RiskMeasure::dirac(f.target, f.image[std::get<RiskMeasure::DiracRep>(mu.rep()).point]);
  }
  if (mu.is_capacity() && fits_capacity(f.target)) {
    const auto& v = *mu.capacity();
    Values table(std::size_t{1} << f.target->size());
    for (Mask b = 0; b < table.size(); ++b) table[b] = v[f.preimage_of(b)];
    return RiskMeasure::choquet(Capacity::unchecked(f.target, std::move(table)));
  }
  return RiskMeasure::black_box(
      f.target, [f, mu](std::span<const Real> phi) { return mu(f.pull_back(phi)); }, "pushforward");
}

}  // namespace riskmetric
