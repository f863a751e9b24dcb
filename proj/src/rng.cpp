#include "spectra/rng.hpp"

#include <cmath>

namespace spectra {

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Seed derive_seed(Seed master, std::uint64_t index, std::string_view label) noexcept {
  std::uint64_t h = mix64(master ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ mix64(index + 0x243f6a8885a308d3ULL));
  h = mix64(h ^ fnv1a(label));
  return h;
}

double standard_normal(SplitMix64& rng) noexcept {
  for (;;) {
    const double u = 2.0 * uniform01(rng) - 1.0;
    const double v = 2.0 * uniform01(rng) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

}  // namespace spectra
