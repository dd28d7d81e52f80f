#include "core/rng.hpp"

#include <cmath>

#include "core/types.hpp"

namespace collapse {

std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

long long Rng::bose_einstein(double mean) {
  require(mean >= 0.0, "bose_einstein: mean must be >= 0");
  if (mean == 0.0) return 0;
  const double log_r = std::log(mean / (mean + 1.0)); // < 0
  const double n = std::floor(std::log(uniform()) / log_r);
  // log(u)/log(r) <= log(2^-53)/log(r); clamp only guards absurd means.
  return n < 9.0e18 ? static_cast<long long>(n) : 9000000000000000000ll;
}

}  // namespace collapse
