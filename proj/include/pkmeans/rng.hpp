#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace pkmeans {

// SplitMix64 finalizer, used to derive decorrelated sub-stream seeds.
// Giving each cluster its own stream keeps earlier clusters' points stable
// when more clusters are added to a spec.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random source. Helpers consume a fixed number of engine
// draws so parallel sub-streams stay aligned no matter what values come out.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix_seed(seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0, 1]; safe as a log() or pow() argument.
  double next_double_pos() { return 1.0 - next_double(); }

  // Box-Muller pair; consumes exactly two uniforms.
  void next_normal_pair(double& z0, double& z1) {
    const double u1 = next_double_pos();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * kPi * u2;
    z0 = r * std::cos(t);
    z1 = r * std::sin(t);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace pkmeans
