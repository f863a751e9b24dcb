#pragma once
// Monte-Carlo engine: coverage of the bound catalog, convergence-rate
// sweeps, expectation checks, constant calibration and the comparison of
// uniform against relative intervals under a decaying spectrum.

#include <optional>
#include <string>
#include <vector>

#include "spectra/bounds.hpp"
#include "spectra/distributions.hpp"
#include "spectra/interval.hpp"
#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

namespace spectra {

struct ExperimentConfig {
  DistributionSpec spec;
  /// Sigma^{1/2} applied to Z for families that sample Z only.
  std::optional<CovarianceFactor> downstream_sigma;
  Index n = 1;
  int trials = 1;
  Seed seed = 0;
  /// Empty means "whatever select_theorem reports".
  std::vector<TheoremTag> theorems;
  std::vector<double> t_grid;
  ConstantsConfig constants;
  BoundInputs inputs;  // t is taken from t_grid
  int workers = 0;

  Index d() const noexcept { return spec.d; }
  void validate() const;
};

struct CoverageReport {
  TheoremTag theorem = TheoremTag::DeterministicLowDim;
  double t = 0.0;
  double epsilon = 0.0;
  double theoretical_failure = 0.0;
  double empirical_failure = 0.0;  // fraction of trials with any violating index
  int failures = 0;
  int trials = 0;
  double wilson_halfwidth = 0.0;
  std::vector<int> per_index_violations;
};

/// Realized-deviation intervals checked on every trial.
struct GuardrailResult {
  int trials = 0;
  long long violations = 0;  // violating (trial, index) pairs
  bool ok() const noexcept { return violations == 0; }
};

struct CoverageRun {
  std::vector<CoverageReport> reports;
  GuardrailResult guardrail;
};

/// z = 1.959964 (95%).
double wilson_halfwidth(int failures, int trials, double z = 1.959964);

/// Population Sigma^{1/2} of the experiment, or nullopt when Sigma = I.
std::optional<CovarianceFactor> population_factor(const DistributionSpec& spec,
                                                  const std::optional<CovarianceFactor>& downstream);

/// Descending eigenvalues of Sigma (all ones when Sigma = I).
Spectrum population_spectrum(const DistributionSpec& spec,
                             const std::optional<CovarianceFactor>& downstream);

CoverageRun run_coverage(const ExperimentConfig& cfg);

struct RateFit {
  std::vector<double> x_values;
  std::vector<double> y_values;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least squares of log y on log x. Needs >= 3 positive points.
RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

enum class SweepAxis { SampleCount, Dimension };

struct SweepConfig {
  DistributionSpec spec;  // spec.d is the fixed d on the SampleCount axis
  SweepAxis axis = SweepAxis::SampleCount;
  Index fixed_n = 1;      // Dimension axis only
  std::vector<Index> grid;
  int trials = 100;
  Seed seed = 0;
  int workers = 0;
};

/// Median over trials of max_i |scale * lambda_i(Sigma_hat) / lambda_i(Sigma) - 1|
/// at each grid point (scale = n/d when d > n, else 1), fitted on log-log
/// axes. Needs >= 4 points spanning at least a factor of 10.
RateFit run_rate_fit(const SweepConfig& cfg);

struct ExpectationConfig {
  DistributionSpec spec;
  std::optional<CovarianceFactor> downstream_sigma;
  Index n = 1;
  int trials = 1000;
  Seed seed = 0;
  int p = 2;
  ConstantsConfig constants;
  Index kp_samples = 100000;
  int kp_directions = 32;
  int workers = 0;
};

struct ExpectationReport {
  Index n = 0;
  Index d = 0;
  int trials = 0;
  int p = 0;
  double K2p = 0.0;
  double budget = 0.0;
  double epsilon = 0.0;
  std::vector<BoundInterval> intervals;  // lambda_i(Sigma_hat) scale
  std::vector<double> mean_eigs;         // trial mean of lambda_i(Sigma_hat)
  std::vector<double> margins;           // min(mean - lower, upper - mean)
  bool all_inside = false;
};

/// Compares trial-averaged eigenvalues with the expectation-mode intervals.
/// d >= n and trials >= 1000.
ExpectationReport run_expectation_check(const ExpectationConfig& cfg);

struct UniformRelativeRow {
  int index = 0;
  double sigma_eig = 0.0;
  double uniform_lower = 0.0;
  double uniform_upper = 0.0;
  double relative_lower = 0.0;
  double relative_upper = 0.0;
  bool flagged = false;  // uniform lower <= 0 < relative lower
};

struct UniformRelativeReport {
  Index n = 0;
  Index d = 0;
  double decay = 0.0;
  int trials = 0;
  double t = 0.0;
  double mean_spectral_error = 0.0;  // trial mean of ||Sigma_hat - Sigma||_2
  std::vector<UniformRelativeRow> rows;
  /// Smallest i0 with every index >= i0 flagged; 0 when there is none.
  int threshold_index = 0;
};

/// Gaussian rows with Sigma = diag(exp(-decay * i)), d <= n.
UniformRelativeReport run_uniform_vs_relative(Index n, Index d, double decay, int trials, Seed seed,
                                              double t, int workers = 0);

struct CalibrationPoint {
  Index n = 1;
  Index d = 1;
};

struct CalibrationConfig {
  TheoremTag theorem = TheoremTag::SubgaussianLowDim;
  DistributionSpec spec;  // spec.d is replaced by each grid point's d
  std::vector<CalibrationPoint> grid;
  int trials = 200;
  Seed seed = 0;
  Seed holdout_seed = 1;
  double t = 1.0;
  double target_coverage = 0.95;
  ConstantsConfig base;
  BoundInputs inputs;
  double max_constant = 1e6;
  int workers = 0;
};

struct CalibrationEvidence {
  Index n = 0;
  Index d = 0;
  double coverage = 0.0;
  double holdout_coverage = 0.0;
  double holdout_wilson = 0.0;
};

struct CalibrationResult {
  TheoremTag theorem = TheoremTag::SubgaussianLowDim;
  double value = 0.0;
  ConstantsConfig constants;
  std::vector<CalibrationEvidence> evidence;
  /// Every held-out coverage >= target - its Wilson halfwidth.
  bool holdout_meets_target = false;
};

/// Smallest constant (relative resolution 1e-6) whose coverage is >= target
/// at every grid point.
CalibrationResult calibrate_constant(const CalibrationConfig& cfg);

}  // namespace spectra
