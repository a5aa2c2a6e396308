#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "riskmetric/real.hpp"

namespace riskmetric {

/// Deterministic generator. Streams for different subsystems are derived from
/// one run seed by name, so adding draws in one subsystem never shifts another.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  static std::uint64_t derive(std::uint64_t seed, std::string_view stream, std::uint64_t index = 0);
  static Rng stream(std::uint64_t seed, std::string_view name, std::uint64_t index = 0) {
    return Rng(derive(seed, name, index));
  }

  std::uint64_t next() { return gen_(); }
  /// Uniform integer in [lo, hi], independent of the standard library's distributions.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return next() % den < num; }
  /// Uniform value on the grid {lo, lo + 1/den, ..., hi}.
  Real grid(std::int64_t lo, std::int64_t hi, std::int64_t den);

 private:
  std::mt19937_64 gen_;
};

}  // namespace riskmetric
