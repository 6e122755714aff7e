#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace semidens {

/// Mixes a base seed with a stream index so that parallel replications get
/// independent, order-insensitive streams (splitmix64 finalizer).
inline std::uint64_t derive_stream_seed(std::uint64_t seed,
                                        std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic double-precision generator. Normal draws use the explicit
/// Box-Muller formula rather than std::normal_distribution, whose algorithm
/// is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1].
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1p-53;
  }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238463 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace semidens
