#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

namespace spectra {

/// Which bound produced an interval. Names describe the setting each bound
/// covers; the string forms are used in config files and reports.
enum class TheoremTag {
  DeterministicLowDim,       // realized ||(1/n)Z^T Z - I||, d <= n
  DeterministicHighDim,      // realized ||(1/d)Z Z^T - I||, d >= n
  SubgaussianLowDim,         // sub-gaussian rows, d <= n
  GaussianLowDim,            // Gaussian rows, explicit constants, d <= n
  BoundedNormLowDim,         // ||z|| <= sqrt(m) a.s., d <= n
  SubgaussianEntriesHighDim, // independent sub-gaussian entries, d >= n
  IsotropicRowsHighDim,      // ||z|| = sqrt(d) a.s., sub-gaussian, d >= n
  IsotropicRowsExpectation,  // ||z|| = sqrt(d) a.s., bound on E[lambda_i]
  NearlySquare,              // i.i.d. entries, d ~ n
};

std::string_view to_string(TheoremTag tag) noexcept;
std::optional<TheoremTag> theorem_from_string(std::string_view name) noexcept;
const std::vector<TheoremTag>& all_theorems() noexcept;

/// Expectation-mode intervals carry this failure probability; they bound
/// E[lambda_i] and are never checked trial by trial.
inline constexpr double kExpectationSentinel = std::numeric_limits<double>::quiet_NaN();

/// Admissible range for lambda_i(empirical second moment) at 1-based index.
struct BoundInterval {
  int index = 0;
  double lower = 0.0;
  double upper = 0.0;
  double epsilon = 0.0;
  TheoremTag theorem = TheoremTag::DeterministicLowDim;
  double failure_prob = 0.0;
  bool vacuous_lower = false;

  bool is_expectation() const noexcept;
  bool contains(double value) const noexcept { return value >= lower && value <= upper; }
};

}  // namespace spectra
