#pragma once
// Deterministic eigenvalue sandwiches for Sigma^{1/2} Z^T Z Sigma^{1/2}
// and the relative intervals they imply for the empirical second moment.

#include <vector>

#include "spectra/interval.hpp"
#include "spectra/linalg.hpp"

namespace spectra {

enum class Regime { LowDim, HighDim };

std::string_view to_string(Regime r) noexcept;

struct SandwichResult {
  int index = 0;  // 1-based
  double lower = 0.0;
  double middle = 0.0;
  double upper = 0.0;
  Regime regime = Regime::LowDim;
};

/// For p.s.d. Sigma (d x d), any n x d matrix Z and 1 <= i <= min(n, d):
///
///   lambda_{i+d-min(n,d)}(Sigma) * lambda_min(n,d)(Z^T Z)
///       <= lambda_i(Sigma^{1/2} Z^T Z Sigma^{1/2})
///       <= lambda_i(Sigma) * lambda_1(Z^T Z).
///
/// Regime is LowDim when d <= n.
SandwichResult ostrowski_sandwich(const SymMatrix& sigma, const DataMatrix& z, int i);

/// All indices 1..min(n, d) with one eigensolve per matrix.
std::vector<SandwichResult> ostrowski_sandwich_all(const SymMatrix& sigma, const DataMatrix& z);

/// True when lower <= middle <= upper up to 1e-8 * max(1, |middle|).
bool sandwich_holds(const SandwichResult& r, double rel_tol = 1e-8) noexcept;

/// d <= n: lambda_i(Sigma_hat) in lambda_i(Sigma) * [1 - dev, 1 + dev], where
/// dev = ||(1/n) Z^T Z - I_d||_2. One interval per population eigenvalue.
std::vector<BoundInterval> relative_sandwich_lowdim(const Spectrum& sigma_eigs, double dev);

/// d >= n: (n/d) lambda_i(Sigma_hat) in [lambda_{i+d-n}(Sigma)(1 - dev),
/// lambda_i(Sigma)(1 + dev)] with dev = ||(1/d) Z Z^T - I_n||_2. Reported on
/// the lambda_i(Sigma_hat) scale, i = 1..n.
std::vector<BoundInterval> relative_sandwich_highdim(const Spectrum& sigma_eigs, double dev, int n,
                                                     int d);

/// Number of eigenvalues >= a - tol_eig.
int count_eigs_at_least(const SymMatrix& m, double a);
/// Number of eigenvalues <= b + tol_eig.
int count_eigs_at_most(const SymMatrix& m, double b);

struct VariationalCheck {
  int r = 0;         // count on Z Z^T
  int s = 0;         // count on Sigma
  int required = 0;  // r + s - d (may be <= 0)
  int observed = 0;  // count on Z Sigma Z^T
  bool holds() const noexcept { return observed >= required; }
};

/// Z Z^T has r eigenvalues >= a1 > 0 and Sigma (symmetric) has s eigenvalues
/// >= a2 > 0, then Z Sigma Z^T has at least r + s - d eigenvalues >= a1 a2.
VariationalCheck check_variational_lower(const SymMatrix& sigma, const DataMatrix& z, double a1,
                                         double a2);
/// Mirror image with <= counting; b1 >= 0, b2 > 0.
VariationalCheck check_variational_upper(const SymMatrix& sigma, const DataMatrix& z, double b1,
                                         double b2);

bool verify_variational_lower(const SymMatrix& sigma, const DataMatrix& z, double a1, double a2);
bool verify_variational_upper(const SymMatrix& sigma, const DataMatrix& z, double b1, double b2);

}  // namespace spectra
