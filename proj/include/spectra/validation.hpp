#pragma once
// Randomized checks of the deterministic sandwich and the eigenvalue-count
// lemmas over the three shape regimes d < n, d = n and d > n.

#include <array>
#include <string_view>

#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

namespace spectra {

enum class Shape { Tall, Square, Wide };  // d < n, d = n, d > n

std::string_view to_string(Shape s) noexcept;

struct SandwichValidationConfig {
  int instances = 1000;             // per shape
  int variational_instances = 500;  // per lemma, spread over the shapes
  int max_dim = 64;
  Seed seed = 0;
  /// Corrupts the first instance so the negative path can be exercised.
  bool inject_violation = false;
  int workers = 0;
};

struct ShapeTally {
  Shape shape = Shape::Tall;
  int instances = 0;
  long long checks = 0;
  long long violations = 0;
  double worst_excess = 0.0;  // largest relative amount by which a bound was crossed
};

struct SandwichValidationReport {
  std::array<ShapeTally, 3> ostrowski{};
  std::array<ShapeTally, 3> variational_lower{};
  std::array<ShapeTally, 3> variational_upper{};
  bool all_pass() const noexcept;
};

/// Random p.s.d. d x d matrix B B^T / k with random rank k in [1, d].
SymMatrix random_psd(Index d, SplitMix64& rng);

/// Random Gaussian n x d matrix with a random overall scale.
DataMatrix random_data(Index n, Index d, SplitMix64& rng);

/// Random (n, d) in the shape with 1 <= n, d <= max_dim; false when the
/// shape is impossible (max_dim = 1 for Tall and Wide).
bool random_dims(Shape shape, int max_dim, SplitMix64& rng, Index& n, Index& d);

SandwichValidationReport validate_sandwich(const SandwichValidationConfig& cfg);

}  // namespace spectra
