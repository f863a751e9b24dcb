#include "spectra/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "spectra/error.hpp"
#include "spectra/kernels.hpp"

namespace spectra {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::GaussianSigma, "GaussianSigma"},
    {Family::SphereIsotropic, "SphereIsotropic"},
    {Family::SubgaussianEntries, "SubgaussianEntries"},
    {Family::CoordinateBasis, "CoordinateBasis"},
    {Family::BoundedNormCustom, "BoundedNormCustom"},
}};

constexpr std::array<std::pair<EntryLaw, std::string_view>, 3> kEntryLawNames{{
    {EntryLaw::Rademacher, "Rademacher"},
    {EntryLaw::StdGaussian, "StdGaussian"},
    {EntryLaw::UniformScaled, "UniformScaled"},
}};

void fill_sphere_row(std::span<double> row, double radius, SplitMix64& rng) {
  double sq = 0.0;
  do {
    sq = 0.0;
    for (double& v : row) {
      v = standard_normal(rng);
      sq += v * v;
    }
  } while (sq == 0.0);
  const double scale = radius / std::sqrt(sq);
  for (double& v : row) v *= scale;
}

void fill_entries(std::span<double> row, EntryLaw law, SplitMix64& rng) {
  switch (law) {
    case EntryLaw::Rademacher:
      for (double& v : row) v = (rng() >> 63) ? 1.0 : -1.0;
      break;
    case EntryLaw::StdGaussian:
      for (double& v : row) v = standard_normal(rng);
      break;
    case EntryLaw::UniformScaled: {
      const double half_width = std::sqrt(3.0);
      for (double& v : row) v = half_width * (2.0 * uniform01(rng) - 1.0);
      break;
    }
  }
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  for (const auto& [value, name] : kFamilyNames) {
    if (value == f) return name;
  }
  return "?";
}

std::string_view to_string(EntryLaw e) noexcept {
  for (const auto& [value, name] : kEntryLawNames) {
    if (value == e) return name;
  }
  return "?";
}

std::optional<Family> family_from_string(std::string_view name) noexcept {
  for (const auto& [value, n] : kFamilyNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

std::optional<EntryLaw> entry_law_from_string(std::string_view name) noexcept {
  for (const auto& [value, n] : kEntryLawNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

CovarianceFactor CovarianceFactor::diagonal(std::vector<double> root_diag) {
  if (root_diag.empty()) throw Error(ErrorKind::SpecError, "covariance factor needs d >= 1");
  for (double v : root_diag) {
    if (!std::isfinite(v)) throw Error(ErrorKind::SpecError, "covariance factor has non-finite entries");
  }
  return CovarianceFactor(std::move(root_diag));
}

CovarianceFactor CovarianceFactor::dense(SymMatrix root) {
  if (!root.all_finite()) throw Error(ErrorKind::SpecError, "covariance factor has non-finite entries");
  return CovarianceFactor(std::move(root));
}

CovarianceFactor CovarianceFactor::exponential_decay(Index d, double rate) {
  if (d < 1) throw Error(ErrorKind::SpecError, "covariance factor needs d >= 1");
  if (!(rate >= 0.0)) throw Error(ErrorKind::SpecError, "decay rate must be >= 0");
  std::vector<double> root(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) root[static_cast<std::size_t>(i)] = std::exp(-0.5 * rate * static_cast<double>(i + 1));
  return CovarianceFactor(std::move(root));
}

Index CovarianceFactor::dim() const noexcept {
  return is_diagonal() ? static_cast<Index>(diag().size()) : matrix().dim();
}

DataMatrix CovarianceFactor::apply(const DataMatrix& z) const {
  if (z.d() != dim()) throw Error(ErrorKind::SpecError, "covariance factor does not match data dimension");
  if (!is_diagonal()) return right_multiply(z, matrix());
  DataMatrix x(z.n(), z.d());
  const std::span<const double> s(diag());
  for (Index i = 0; i < z.n(); ++i) kernels::hadamard(z.row(i), s, x.row(i));
  return x;
}

Spectrum CovarianceFactor::population_spectrum() const {
  std::vector<double> eigs;
  if (is_diagonal()) {
    eigs.reserve(diag().size());
    for (double v : diag()) eigs.push_back(v * v);
  } else {
    const Spectrum root_eigs = sym_eigvals_desc(matrix());
    for (double v : root_eigs.values()) eigs.push_back(v * v);
  }
  return Spectrum(std::move(eigs));
}

SymMatrix CovarianceFactor::covariance() const {
  if (is_diagonal()) {
    std::vector<double> sq;
    for (double v : diag()) sq.push_back(v * v);
    return SymMatrix::diagonal(sq);
  }
  return SymMatrix(Eigen::MatrixXd(matrix().matrix() * matrix().matrix()));
}

SymMatrix CovarianceFactor::root() const {
  return is_diagonal() ? SymMatrix::diagonal(diag()) : matrix();
}

void DistributionSpec::validate() const {
  if (d < 1) throw Error(ErrorKind::SpecError, "distribution needs d >= 1");
  if (sigma_factor && sigma_factor->dim() != d) {
    throw Error(ErrorKind::SpecError, "sigma_factor dimension differs from d");
  }
  switch (family) {
    case Family::GaussianSigma:
      if (!sigma_factor) throw Error(ErrorKind::SpecError, "GaussianSigma requires sigma_factor");
      break;
    case Family::SphereIsotropic:
    case Family::CoordinateBasis:
      if (sigma_factor) {
        throw Error(ErrorKind::SpecError,
                    std::string(to_string(family)) + " samples Z only; apply Sigma downstream");
      }
      break;
    case Family::SubgaussianEntries:
      if (!entry_law) throw Error(ErrorKind::SpecError, "SubgaussianEntries requires entry_law");
      break;
    case Family::BoundedNormCustom:
      if (!(norm_ratio >= 1.0 && norm_ratio <= 2.0)) {
        throw Error(ErrorKind::SpecError, "norm_ratio must lie in [1, 2]");
      }
      break;
  }
  if (entry_law && family != Family::SubgaussianEntries) {
    throw Error(ErrorKind::SpecError, "entry_law only applies to SubgaussianEntries");
  }
}

DataMatrix sample_Z(const DistributionSpec& spec, Index n, Seed seed) {
  spec.validate();
  if (n < 1) throw Error(ErrorKind::SpecError, "sample count must be >= 1");
  SplitMix64 rng(seed);
  DataMatrix z(n, spec.d);
  const double root_d = std::sqrt(static_cast<double>(spec.d));
  for (Index i = 0; i < n; ++i) {
    std::span<double> row = z.row(i);
    switch (spec.family) {
      case Family::GaussianSigma:
        fill_entries(row, EntryLaw::StdGaussian, rng);
        break;
      case Family::SubgaussianEntries:
        fill_entries(row, *spec.entry_law, rng);
        break;
      case Family::SphereIsotropic:
        fill_sphere_row(row, root_d, rng);
        break;
      case Family::CoordinateBasis:
        row[uniform_below(rng, static_cast<std::uint64_t>(spec.d))] = root_d;
        break;
      case Family::BoundedNormCustom: {
        const double lo = 2.0 - spec.norm_ratio;
        const double sq_radius_over_d = lo + (spec.norm_ratio - lo) * uniform01(rng);
        fill_sphere_row(row, std::sqrt(sq_radius_over_d) * root_d, rng);
        break;
      }
    }
  }
  return z;
}

DataMatrix sample_X(const DistributionSpec& spec, Index n, Seed seed) {
  if (!spec.sigma_factor) throw Error(ErrorKind::SpecError, "sample_X requires sigma_factor");
  return spec.sigma_factor->apply(sample_Z(spec, n, seed));
}

std::optional<double> almost_sure_sq_norm_bound(const DistributionSpec& spec) {
  const auto d = static_cast<double>(spec.d);
  switch (spec.family) {
    case Family::SphereIsotropic:
    case Family::CoordinateBasis:
      return d;
    case Family::BoundedNormCustom:
      return spec.norm_ratio * d;
    case Family::SubgaussianEntries:
      if (spec.entry_law == EntryLaw::Rademacher) return d;
      if (spec.entry_law == EntryLaw::UniformScaled) return 3.0 * d;
      return std::nullopt;
    case Family::GaussianSigma:
      return std::nullopt;
  }
  return std::nullopt;
}

bool has_constant_norm(const DistributionSpec& spec) noexcept {
  return spec.family == Family::SphereIsotropic || spec.family == Family::CoordinateBasis ||
         (spec.family == Family::SubgaussianEntries && spec.entry_law == EntryLaw::Rademacher);
}

bool has_iid_entries(const DistributionSpec& spec) noexcept {
  return spec.family == Family::GaussianSigma || spec.family == Family::SubgaussianEntries;
}

int default_psi2_p_max(Index d) noexcept {
  const double logd = std::log(static_cast<double>(std::max<Index>(d, 1)));
  return std::max(2, 2 * static_cast<int>(std::ceil(logd)));
}

std::vector<std::vector<double>> direction_net(Index d, int count, Seed seed) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "need at least one direction");
  const auto dim = static_cast<std::size_t>(d);
  std::vector<std::vector<double>> net;
  net.reserve(static_cast<std::size_t>(count));

  std::vector<double> axis(dim, 0.0);
  axis[0] = 1.0;
  net.push_back(std::move(axis));
  if (d > 1 && count > 1) {
    net.emplace_back(dim, 1.0 / std::sqrt(static_cast<double>(d)));
  }
  SplitMix64 rng(seed);
  while (net.size() < static_cast<std::size_t>(count)) {
    std::vector<double> u(dim);
    fill_sphere_row(u, 1.0, rng);
    net.push_back(std::move(u));
  }
  return net;
}

namespace {

std::vector<double> project(const DataMatrix& z, std::span<const double> u) {
  std::vector<double> proj(static_cast<std::size_t>(z.n()));
  for (Index i = 0; i < z.n(); ++i) proj[static_cast<std::size_t>(i)] = kernels::dot(z.row(i), u);
  return proj;
}

void require_samples(Index n_samples) {
  if (n_samples < 100) {
    throw Error(ErrorKind::InsufficientSamples, "moment estimation needs at least 100 samples");
  }
}

}  // namespace

MomentEstimate estimate_psi2(const DistributionSpec& spec, Index n_samples, int n_directions,
                             int p_max, Seed seed) {
  require_samples(n_samples);
  if (p_max < 2 || p_max % 2 != 0) {
    throw Error(ErrorKind::InvalidInput, "p_max must be an even integer >= 2");
  }
  const DataMatrix z = sample_Z(spec, n_samples, derive_seed(seed, 0, "psi2-samples"));
  const auto net = direction_net(spec.d, n_directions, derive_seed(seed, 0, "psi2-directions"));
  const int orders = p_max / 2;
  const auto inv_n = 1.0 / static_cast<double>(n_samples);

  MomentEstimate est;
  est.directions_used = static_cast<int>(net.size());
  est.samples_used = n_samples;
  est.value = 0.0;
  est.p = 2;
  for (const auto& u : net) {
    const std::vector<double> proj = project(z, u);
    const std::vector<double> sums = kernels::even_power_sums(proj, orders);
    for (int j = 0; j < orders; ++j) {
      const double p = 2.0 * (j + 1);
      const double v = std::pow(sums[static_cast<std::size_t>(j)] * inv_n, 1.0 / p) / std::sqrt(p);
      if (v > est.value) {
        est.value = v;
        est.p = 2 * (j + 1);
      }
    }
  }
  return est;
}

MomentEstimate estimate_Kp(const DistributionSpec& spec, int p, Index n_samples, int n_directions,
                           Seed seed) {
  require_samples(n_samples);
  if (p < 1) throw Error(ErrorKind::InvalidInput, "moment order p must be >= 1");
  const DataMatrix z = sample_Z(spec, n_samples, derive_seed(seed, 0, "kp-samples"));
  const auto net = direction_net(spec.d, n_directions, derive_seed(seed, 0, "kp-directions"));
  const auto inv_n = 1.0 / static_cast<double>(n_samples);

  MomentEstimate est;
  est.p = p;
  est.directions_used = static_cast<int>(net.size());
  est.samples_used = n_samples;
  for (const auto& u : net) {
    const std::vector<double> proj = project(z, u);
    const double v = std::pow(kernels::abs_power_sum(proj, p) * inv_n, 1.0 / p);
    est.value = std::max(est.value, v);
  }
  return est;
}

}  // namespace spectra
