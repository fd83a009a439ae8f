#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fqess {

// splitmix64 step; used to derive independent child seeds (per replica, per
// deflation level, ...) from one user-facing seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t a = splitmix64(s);
  s = seed ^ (0xd1b54a32d192ed03ull * (stream + 1));
  return a ^ splitmix64(s);
}

// Seeded generator with explicitly coded distributions.  std::mt19937_64 has
// a standardized sequence, and the distributions below avoid the
// implementation-defined std:: distribution algorithms, so every draw is
// reproducible for a given seed on any conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [-1, 1].
  double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller (coded here for sequence stability).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Rng child(std::uint64_t stream) {
    return Rng(derive_seed(base_mix_ ^ engine_(), stream));
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
  std::uint64_t base_mix_ = 0x6a09e667f3bcc908ull;
};

}  // namespace fqess
