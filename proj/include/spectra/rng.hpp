#pragma once
// Counter-based random streams. A stream is identified by a 64-bit key;
// the k-th output is a bijective mix of key + k * golden_gamma (SplitMix64),
// so any trial's stream can be reproduced without replaying the others.

#include <cstdint>
#include <limits>
#include <string_view>

namespace spectra {

using Seed = std::uint64_t;

/// Stateless 64-bit finalizer from SplitMix64.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(Seed key) noexcept : state_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    state_ += kGamma;
    return mix64(state_);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

/// Key for the stream (master, index, label). Distinct labels give
/// unrelated streams for the same trial index.
Seed derive_seed(Seed master, std::uint64_t index, std::string_view label) noexcept;

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by multiply-high.
inline std::uint64_t uniform_below(SplitMix64& rng, std::uint64_t bound) noexcept {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>((static_cast<u128>(rng()) * bound) >> 64);
}

/// Standard normal draw (Marsaglia polar method, no cached spare value so
/// every call consumes whole draws from the stream).
double standard_normal(SplitMix64& rng) noexcept;

}  // namespace spectra
