#ifndef P3O_RNG_HPP_
#define P3O_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace p3o {

/// Deterministic random stream used everywhere in the library.
///
/// All draws are derived from explicit integer arithmetic on a xoshiro-style
/// generator so that a (seed, label) pair reproduces the same sequence on any
/// platform with IEEE doubles. Distribution helpers are hand-rolled on purpose:
/// std::normal_distribution and friends are implementation-defined and would
/// break the bit-for-bit reproducibility contract of training runs.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(splitmix64_scramble(seed)) {}

  /// Derive an independent child stream from a label and index. Children with
  /// distinct (label, index) pairs never share state with the parent.
  RngStream derive(std::string_view label, std::uint64_t index = 0) const {
    std::uint64_t h = state_;
    for (char c : label) {
      h = splitmix64_scramble(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(c)));
    }
    return RngStream(h ^ splitmix64_scramble(index + 0x9e3779b97f4a7c15ULL));
  }

  /// Next raw 64-bit value (splitmix64).
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in (0, 1]; safe as a log() argument.
  double uniform01_open_low() { return 1.0 - uniform01(); }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n). Multiply-shift reduction; bias is O(n / 2^64).
  std::uint64_t uniform_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal draw via Box-Muller (cosine branch). Consumes exactly two
  /// uniforms per call, keeping stream consumption data-independent.
  double normal() {
    const double u1 = uniform01_open_low();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Poisson draw by inversion with sequential search. Exact for the small
  /// means used here; consumes exactly one uniform per call.
  std::uint64_t poisson(double mean) {
    if (mean <= 0.0) {
      (void)uniform01();  // keep stream consumption identical for mean == 0
      return 0;
    }
    const double u = uniform01();
    double p = std::exp(-mean);
    double cumulative = p;
    std::uint64_t k = 0;
    while (u >= cumulative && k < 1000000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cumulative += p;
    }
    return k;
  }

 private:
  static std::uint64_t splitmix64_scramble(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace p3o

#endif  // P3O_RNG_HPP_
