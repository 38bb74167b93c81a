#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace entrokit {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based stream derivation: replicate `index` of `master` gets its own
// decorrelated seed without any shared sampler state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept
{
  return splitmix64(splitmix64(master) + 0x9e3779b97f4a7c15ULL * (index + 1));
}

// Seeded generator with explicit transforms, so draws are reproducible
// bit-for-bit for a given (seed, call sequence).
class Rng {
public:
  explicit Rng(std::uint64_t seed)
    : engine_(splitmix64(seed))
  {
  }

  // uniform on [0, 1)
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform on (0, 1]
  double uniform01_open_low() { return 1.0 - uniform01(); }

  // standard normal via Box-Muller, one spare cached
  double normal()
  {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  double exponential(double lambda) { return -std::log(uniform01_open_low()) / lambda; }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace entrokit
