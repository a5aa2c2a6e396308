#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "riskmetric/error.hpp"
#include "riskmetric/real.hpp"

namespace riskmetric {

/// Largest point count for which exact-mode inputs are accepted (2^n tables).
inline constexpr std::size_t kMaxExactPoints = 12;
/// Float mode still materializes capacity tables, so it keeps a hard cap too.
inline constexpr std::size_t kMaxFloatPoints = 16;

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;
using Values = std::vector<Real>;
using Mask = std::uint64_t;

/// Labelled finite metric space with a dense distance matrix.
///
/// Product spaces carry their factors and use the sup metric; index
/// (i0, i1, ...) is stored row-major with the last factor fastest.
class FiniteMetricSpace {
 public:
  /// Validates every metric axiom; throws Error naming the offending indices.
  static SpacePtr validate_metric(std::vector<std::string> labels, const std::vector<Values>& dist);
  static SpacePtr product(const std::vector<SpacePtr>& factors);
  static SpacePtr product(const SpacePtr& a, const SpacePtr& b) { return product({a, b}); }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  const Real& distance(std::size_t i, std::size_t j) const { return dist_[i * size() + j]; }
  Real diameter() const;
  bool is_exact() const { return exact_; }

  bool is_product() const { return !factors_.empty(); }
  const std::vector<SpacePtr>& factors() const { return factors_; }
  std::vector<std::size_t> decode(std::size_t index) const;
  std::size_t encode(std::span<const std::size_t> coords) const;

  /// Structural equality: same labels and the same distances.
  bool same_as(const FiniteMetricSpace& other) const;

 private:
  FiniteMetricSpace() = default;

  std::vector<std::string> labels_;
  Values dist_;
  std::vector<SpacePtr> factors_;
  std::uint64_t fingerprint_ = 0;
  bool exact_ = true;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* context);

struct PointFunction {
  SpacePtr space;
  Values values;

  PointFunction(SpacePtr s, Values v);
  static PointFunction constant(SpacePtr s, const Real& c);
};

struct PointSubset {
  SpacePtr space;
  Mask mask = 0;

  bool contains(std::size_t i) const { return (mask >> i) & 1U; }
  bool empty() const { return mask == 0; }
  std::size_t count() const;
  bool subset_of(const PointSubset& other) const { return (mask & ~other.mask) == 0; }
  std::string to_string() const;  // "{a,b}"
  friend bool operator==(const PointSubset& a, const PointSubset& b) { return a.mask == b.mask; }
};

Mask full_mask(std::size_t n);

/// Subset of left x right, stored as a dense boolean matrix.
class Relation {
 public:
  Relation(SpacePtr left, SpacePtr right);
  static Relation diagonal(const SpacePtr& space);
  static Relation full(SpacePtr left, SpacePtr right);

  const SpacePtr& left() const { return left_; }
  const SpacePtr& right() const { return right_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool contains(std::size_t i, std::size_t j) const { return cells_[i * cols_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool value = true) { cells_.at(i * cols_ + j) = value ? 1 : 0; }

  /// {j : (i, j) in S}
  Mask section(std::size_t i) const;
  /// {i : (i, j) in S}
  Mask cosection(std::size_t j) const;
  Mask left_projection() const;
  Mask right_projection() const;
  std::size_t count() const;
  Relation transpose() const;
  /// {(i, k) : exists j with (i, j) in this and (j, k) in other}
  Relation compose(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  bool subset_of(const Relation& other) const;
  /// Largest left-right distance over the pairs; requires left == right.
  Real max_distance() const;
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

  friend bool operator==(const Relation& a, const Relation& b) { return a.cells_ == b.cells_; }

 private:
  SpacePtr left_;
  SpacePtr right_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<unsigned char> cells_;
};

/// Closed sublevel set {(x, y) : dist(x, y) <= t}; always contains the diagonal.
Relation sublevel_relation(const SpacePtr& space, const Real& t);

/// Sorted distinct entries of the distance matrix, starting at 0.
std::vector<Real> distance_levels(const FiniteMetricSpace& space);

/// Hausdorff distance between two nonempty subsets of the same space.
Real hausdorff_distance(const PointSubset& a, const PointSubset& b);

/// max{|phi(x) - phi(y)| : dist(x, y) <= t}
Real modulus_of_continuity(const PointFunction& phi, const Real& t);

}  // namespace riskmetric
