#include "riskmetric/rng.hpp"

namespace riskmetric {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t Rng::derive(std::uint64_t seed, std::string_view stream, std::uint64_t index) {
  std::uint64_t h = splitmix(seed);
  for (unsigned char c : stream) h = splitmix(h ^ c);
  return splitmix(h ^ splitmix(index + 0x5851f42d4c957f2dULL));
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
  std::uint64_t draw = next();
  while (draw >= limit) draw = next();
  return lo + static_cast<std::int64_t>(draw % span);
}

Real Rng::grid(std::int64_t lo, std::int64_t hi, std::int64_t den) {
  return Real(uniform(lo * den, hi * den), den);
}

}  // namespace riskmetric
