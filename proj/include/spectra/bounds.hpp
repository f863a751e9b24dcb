#pragma once
// Closed-form probabilistic bounds on the eigenvalues of the empirical
// second-moment matrix. Every interval list is indexed 1..min(n, d) and
// reported on the lambda_i(Sigma_hat) scale.

#include <vector>

#include "spectra/distributions.hpp"
#include "spectra/interval.hpp"
#include "spectra/linalg.hpp"

namespace spectra {

/// Absolute constants that the bounds assert exist without giving values.
/// All default to 1; `calibrate` finds data-driven values.
struct ConstantsConfig {
  double subgaussian_C = 1.0;       // scale of K^2 max(eps, eps^2), sub-gaussian rows
  double bounded_norm_c = 1.0;      // exponent constant in 2d exp(-c t^2)
  double entries_highdim_C = 1.0;   // scale of K^2 max(eps, eps^2), independent entries
  double rows_highdim_C_K = 1.0;    // multiplies sqrt(n/d) inside eps, constant-norm rows
  double rows_highdim_c_K = 1.0;    // exponent constant in 2 exp(-c_K t^2)
  double rosenthal_C = 1.0;         // moment-inequality constant in B(n, p) and m bounds
  double square_C_K = 1.0;          // base of (C_K / t1)^{|n-d|+1}
  double square_c_K = 1.0;          // exponent constant in exp(-c_K max(n, d))
  double square_C_tilde = 1.0;      // scale of the upper factor
  double incoherence_C = 1.0;       // scale of sqrt(m log n / d)

  void validate() const;
};

struct EpsilonFactor {
  double epsilon = 0.0;
  double factor = 0.0;
  double failure_prob = 0.0;
  bool vacuous = false;  // the unclamped failure probability was >= 1
};

/// Clamps into [0, 1]; the flag reports whether clamping from above happened.
EpsilonFactor with_failure(double epsilon, double factor, double raw_failure);

// Sub-gaussian rows, d <= n.
EpsilonFactor eps_lowdim_subgaussian(int n, int d, double t, double K, const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_lowdim_subgaussian(const Spectrum& sigma_eigs, int n, int d,
                                                       double t, double K,
                                                       const ConstantsConfig& cfg);

// Gaussian rows, d <= n. No free constants.
EpsilonFactor eps_gaussian(int n, int d, double t);
std::vector<BoundInterval> interval_gaussian(const Spectrum& sigma_eigs, int n, int d, double t);
/// t with 2 exp(-t^2 / 2) = delta.
double gaussian_t_for_failure(double delta);

// ||z||^2 <= m a.s., d <= n.
EpsilonFactor eps_bounded_norm(int n, int d, double m_bound, double t, const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_bounded_norm(const Spectrum& sigma_eigs, int n, int d,
                                                 double m_bound, double t,
                                                 const ConstantsConfig& cfg);
/// t with 2d exp(-c t^2) = delta.
double bounded_norm_t_for_failure(int d, double delta, const ConstantsConfig& cfg);

// Independent sub-gaussian entries, d >= n.
EpsilonFactor eps_highdim_subgaussian(int n, int d, double t, double K, const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_highdim_subgaussian(const Spectrum& sigma_eigs, int n, int d,
                                                        double t, double K,
                                                        const ConstantsConfig& cfg);

// Independent rows with ||z|| = sqrt(d), d >= n.
enum class IndependentRowsMode { HighProb, Expectation };

struct IndependentRowsParams {
  IndependentRowsMode mode = IndependentRowsMode::HighProb;
  double t = 0.0;    // HighProb
  int p = 0;         // Expectation, p >= 1
  double K2p = 0.0;  // Expectation, estimate of K(2p)
};

/// B(n, p) = C (p / log(p + 1)) n^{1/p} max(n, n^{1/p} K(2p)^2) log(n).
double moment_budget(int n, int p, double K2p, const ConstantsConfig& cfg);
EpsilonFactor eps_highdim_independent(int n, int d, const IndependentRowsParams& params,
                                      const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_highdim_independent(const Spectrum& sigma_eigs, int n, int d,
                                                        const IndependentRowsParams& params,
                                                        const ConstantsConfig& cfg);

// I.i.d. sub-gaussian entries, any d, n; sharp near d = n.
struct SquareFactors {
  double epsilon1 = 0.0;
  double epsilon2 = 0.0;
  double lower_factor = 0.0;
  double upper_factor = 0.0;
  double failure_prob = 0.0;
  bool vacuous = false;
};
/// Tall: n >= d, intervals over lambda_1..lambda_d. Wide: d >= n, rescaled
/// by d/n and indexed 1..n. Both apply at d = n.
enum class SquareBranch { Tall, Wide };

SquareFactors square_factors_tall(int n, int d, double t1, double t2, double K,
                                  const ConstantsConfig& cfg);
SquareFactors square_factors_wide(int n, int d, double t1, double t2, double K,
                                  const ConstantsConfig& cfg);
SquareFactors square_factors(int n, int d, double t1, double t2, double K, const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_square(const Spectrum& sigma_eigs, int n, int d, double t1,
                                           double t2, double K, const ConstantsConfig& cfg);
std::vector<BoundInterval> interval_square(const Spectrum& sigma_eigs, int n, int d, double t1,
                                           double t2, double K, const ConstantsConfig& cfg,
                                           SquareBranch branch);

/// Asymptotic range [(1 - sqrt(gamma))^2, (1 + sqrt(gamma))^2] of isotropic
/// spectra with d/n -> gamma in (0, 1).
Interval bai_yin_range(double gamma);

/// Bounds applicable to (family, n, d). Throws Unsupported when none is.
std::vector<TheoremTag> select_theorem(const DistributionSpec& spec, int n, int d);

/// True for tags whose interval width depends on a ConstantsConfig entry.
bool has_interval_constant(TheoremTag tag) noexcept;
/// Pointer to the ConstantsConfig entry that scales the tag's interval, or
/// nullptr when the tag has none.
double* interval_constant(ConstantsConfig& cfg, TheoremTag tag) noexcept;

/// Inputs shared by all probabilistic bounds in one evaluation.
struct BoundInputs {
  double t = 0.0;        // t, or t2 for NearlySquare
  double K = 1.0;        // sub-gaussian norm
  double t1 = 2.0;       // NearlySquare only
  double m_bound = 0.0;  // BoundedNormLowDim only; 0 means "take from the family"
  int p = 2;             // IsotropicRowsExpectation only
  double K2p = 0.0;      // IsotropicRowsExpectation only
};

/// Dispatches to the tag's interval function. Deterministic tags are not
/// handled here (they need the realized deviation).
std::vector<BoundInterval> evaluate_bound(TheoremTag tag, const Spectrum& sigma_eigs, int n, int d,
                                          const BoundInputs& in, const ConstantsConfig& cfg);

}  // namespace spectra
