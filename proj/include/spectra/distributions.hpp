#pragma once
// Samplers for isotropic row distributions and moment estimators for the
// sub-gaussian norm and the directional moments K(p).

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

namespace spectra {

enum class Family { GaussianSigma, SphereIsotropic, SubgaussianEntries, CoordinateBasis, BoundedNormCustom };
enum class EntryLaw { Rademacher, StdGaussian, UniformScaled };

std::string_view to_string(Family f) noexcept;
std::string_view to_string(EntryLaw e) noexcept;
std::optional<Family> family_from_string(std::string_view name) noexcept;
std::optional<EntryLaw> entry_law_from_string(std::string_view name) noexcept;

/// Square-root factor S = Sigma^{1/2} of the population matrix, so that
/// X = Z S. Stored either as a diagonal (cheap for large d) or densely.
class CovarianceFactor {
 public:
  static CovarianceFactor diagonal(std::vector<double> root_diag);
  static CovarianceFactor dense(SymMatrix root);
  /// Factor of Sigma = diag(exp(-rate * i)), i = 1..d.
  static CovarianceFactor exponential_decay(Index d, double rate);

  Index dim() const noexcept;
  bool is_diagonal() const noexcept { return std::holds_alternative<std::vector<double>>(rep_); }
  const std::vector<double>& diag() const { return std::get<std::vector<double>>(rep_); }
  const SymMatrix& matrix() const { return std::get<SymMatrix>(rep_); }

  DataMatrix apply(const DataMatrix& z) const;
  /// Descending eigenvalues of Sigma = S^2.
  Spectrum population_spectrum() const;
  /// Sigma as a dense matrix.
  SymMatrix covariance() const;
  /// S as a dense matrix.
  SymMatrix root() const;

 private:
  explicit CovarianceFactor(std::variant<std::vector<double>, SymMatrix> rep) : rep_(std::move(rep)) {}

  std::variant<std::vector<double>, SymMatrix> rep_;
};

struct DistributionSpec {
  Family family = Family::GaussianSigma;
  Index d = 1;
  std::optional<CovarianceFactor> sigma_factor;
  std::optional<EntryLaw> entry_law;
  std::string seed_stream = "data";
  /// BoundedNormCustom only: ||z||^2 / d is uniform on [2 - ratio, ratio],
  /// ratio in [1, 2], so ||z||^2 <= ratio * d.
  double norm_ratio = 2.0;

  /// Throws SpecError for inconsistent combinations.
  void validate() const;
};

/// n i.i.d. isotropic rows from the family. Deterministic in (spec, n, seed).
DataMatrix sample_Z(const DistributionSpec& spec, Index n, Seed seed);

/// sample_Z(...) * Sigma^{1/2}; needs spec.sigma_factor.
DataMatrix sample_X(const DistributionSpec& spec, Index n, Seed seed);

/// Almost-sure bound m on ||z||^2, when the family has one.
std::optional<double> almost_sure_sq_norm_bound(const DistributionSpec& spec);

/// True when every row has ||z||^2 = d exactly.
bool has_constant_norm(const DistributionSpec& spec) noexcept;

/// True when the entries of z are i.i.d.
bool has_iid_entries(const DistributionSpec& spec) noexcept;

struct MomentEstimate {
  int p = 0;
  double value = 0.0;
  int directions_used = 0;
  Index samples_used = 0;
};

/// Default highest moment order for psi_2 estimation: max(2, 2 * ceil(log d)).
int default_psi2_p_max(Index d) noexcept;

/// Unit directions used by the estimators: e_1, the normalized all-ones
/// vector (when d > 1), then random directions up to `count`.
std::vector<std::vector<double>> direction_net(Index d, int count, Seed seed);

/// max over directions u and even p <= p_max of
/// p^{-1/2} * (mean |<z, u>|^p)^{1/p}. A lower estimate of ||z||_psi2.
MomentEstimate estimate_psi2(const DistributionSpec& spec, Index n_samples, int n_directions,
                             int p_max, Seed seed);

/// max over directions u of (mean |<z, u>|^p)^{1/p}. A lower estimate of K(p).
MomentEstimate estimate_Kp(const DistributionSpec& spec, int p, Index n_samples, int n_directions,
                           Seed seed);

}  // namespace spectra
