#pragma once
// Incoherence of a set of isotropic rows: the largest summed squared inner
// product of one row against the others, and the moment bounds on it.

#include <vector>

#include "spectra/bounds.hpp"
#include "spectra/distributions.hpp"
#include "spectra/linalg.hpp"

namespace spectra {

struct IncoherenceEstimate {
  double empirical_m = 0.0;
  int trials = 0;
  Index n = 0;
  Index d = 0;
};

/// Above this many entries the row inner products use compensated sums.
inline constexpr double kCompensatedGramThreshold = 1e7;

/// max_j sum_{k != j} <z_j, z_k>^2 for a fixed Z.
double max_offdiag_row_sq_sum(const DataMatrix& z);

/// Monte-Carlo mean over trials of (1/d) max_j sum_{k != j} <z_j, z_k>^2.
IncoherenceEstimate empirical_incoherence(const DistributionSpec& spec, Index n, int trials, Seed seed,
                                          int workers = 0);

struct IsotropicIdentity {
  double mean_sq_inner = 0.0;  // E <z1, z2>^2
  double mean_sq_norm = 0.0;   // E ||z1||^2
};

/// Both means over independent pairs; both equal d for isotropic rows.
IsotropicIdentity check_isotropic_identity(const DistributionSpec& spec, Index n_pairs, Seed seed);

/// C (p / log p) n^{1/p} (1/d) max(sum_sq, sum_2p^{1/p}), p > 1.
double rosenthal_incoherence_bound(double sum_sq, double sum_2p, Index n, Index d, double p,
                                   const ConstantsConfig& cfg);

/// C (p / (log p + 1)) n^{1/p} max(n, n^{1/p} K(2p)^2), p >= 1.
double corollary_incoherence_bound(Index n, int p, double K2p, const ConstantsConfig& cfg);

/// C sqrt(m log(n) / d): bound on E||(1/d) Z Z^T - I_n||_2.
double expectation_deviation_bound(double m_bound, Index n, Index d, const ConstantsConfig& cfg);

}  // namespace spectra
