#pragma once

#include <cstdint>
#include <random>

namespace collapse {

// One splitmix64 output for the given state; also the sub-seed derivation
// used to hand independent streams to parallel workers.
std::uint64_t splitmix64(std::uint64_t state);

// Deterministic sub-seed for worker/chunk k under a master seed. Independent
// of how chunks are distributed over threads.
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t k) {
  return splitmix64(master + 0x9E3779B97F4A7C15ull * (k + 1));
}

// mt19937_64 behind a fixed double-conversion recipe, so sequences are
// bit-reproducible for a given seed on the same build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on (0, 1): 53-bit mantissa, zero excluded so logs are finite.
  double uniform() {
    double u;
    do {
      u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    } while (u == 0.0);
    return u;
  }

  // Bose-Einstein (geometric) occupation sample with the given mean:
  // P(n) = (1/(mean+1)) (mean/(mean+1))^n via inversion.
  long long bose_einstein(double mean);

 private:
  std::mt19937_64 eng_;
};

}  // namespace collapse
