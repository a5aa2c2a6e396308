#pragma once

#include <vector>

#include "riskmetric/rng.hpp"
#include "riskmetric/space.hpp"

namespace riskmetric::probes {

/// 1_B for every subset B (n <= 12), otherwise singletons and their complements.
std::vector<Values> indicators(std::size_t n);
/// The functions dist(., x) for every point x.
std::vector<Values> distance_functions(const FiniteMetricSpace& space);
/// Values on the grid {lo, lo + 1/den, ..., hi}.
std::vector<Values> random_functions(std::size_t n, std::size_t count, Rng& rng, std::int64_t lo = -4,
                                     std::int64_t hi = 4, std::int64_t den = 1);
/// Pointwise max and min of random pairs drawn from `base`.
std::vector<Values> lattice_combinations(const std::vector<Values>& base, std::size_t count, Rng& rng);

Values constant(std::size_t n, const Real& c);
Values lift_left(std::span<const Real> phi, std::size_t right_size);   // (x, y) -> phi(x)
Values lift_right(std::span<const Real> psi, std::size_t left_size);   // (x, y) -> psi(y)

}  // namespace riskmetric::probes
