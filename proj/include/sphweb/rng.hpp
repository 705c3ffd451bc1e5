#pragma once

// Deterministic random numbers.  The engine is std::mt19937_64, whose output
// sequence is fully pinned by the standard; the double and integer mappings
// below avoid std distributions (whose outputs are implementation-defined) so
// seeded runs reproduce bit-for-bit everywhere.

#include "sphweb/sphere.hpp"

#include <cstdint>
#include <random>

namespace sphweb {

class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : eng_(seed), seed_(seed) {}

  // Independent deterministic substream (restart/trial index).
  Rng stream(std::uint64_t index) const {
    return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ULL * (index + 1))));
  }

  std::uint64_t bits() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(bits() % span);
  }

  // Uniform direction on the sphere (rejection from the cube).
  Vec3 unit_vector() {
    for (;;) {
      const Vec3 v(uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0));
      const double n2 = v.squaredNorm();
      if (n2 > 1e-6 && n2 <= 1.0) return v / std::sqrt(n2);
    }
  }

  // Uniform unit tangent at v.
  Vec3 tangent_at(const Vec3& v) {
    const auto basis = tangent_basis(v);
    const double a = uniform(0.0, kTwoPi);
    return std::cos(a) * basis.col(0) + std::sin(a) * basis.col(1);
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 eng_;
  std::uint64_t seed_ = 0;
};

}  // namespace sphweb
