#include "spectra/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "spectra/error.hpp"

namespace spectra {

namespace {

constexpr std::array<std::pair<TheoremTag, std::string_view>, 9> kTagNames{{
    {TheoremTag::DeterministicLowDim, "deterministic_lowdim"},
    {TheoremTag::DeterministicHighDim, "deterministic_highdim"},
    {TheoremTag::SubgaussianLowDim, "subgaussian_lowdim"},
    {TheoremTag::GaussianLowDim, "gaussian_lowdim"},
    {TheoremTag::BoundedNormLowDim, "bounded_norm_lowdim"},
    {TheoremTag::SubgaussianEntriesHighDim, "subgaussian_entries_highdim"},
    {TheoremTag::IsotropicRowsHighDim, "isotropic_rows_highdim"},
    {TheoremTag::IsotropicRowsExpectation, "isotropic_rows_expectation"},
    {TheoremTag::NearlySquare, "nearly_square"},
}};

void require_lowdim(int n, int d, std::string_view what) {
  if (n < 1 || d < 1 || d > n) {
    throw Error(ErrorKind::RegimeError, std::string(what) + " needs 1 <= d <= n (n=" +
                                            std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
}

void require_highdim(int n, int d, std::string_view what, ErrorKind kind = ErrorKind::RegimeError) {
  if (n < 1 || d < n) {
    throw Error(kind, std::string(what) + " needs 1 <= n <= d (n=" + std::to_string(n) +
                          ", d=" + std::to_string(d) + ")");
  }
}

void require_nonneg(double t, std::string_view name) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidInput, std::string(name) + " must be >= 0");
}

void require_positive(double v, std::string_view name) {
  if (!(v > 0.0)) throw Error(ErrorKind::InvalidInput, std::string(name) + " must be > 0");
}

void require_spectrum(const Spectrum& s, int d) {
  if (s.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorKind::InvalidInput, "population spectrum has " + std::to_string(s.size()) +
                                             " entries, expected d = " + std::to_string(d));
  }
}

double max_eps(double eps) { return std::max(eps, eps * eps); }

BoundInterval make(int index, double lower, double upper, double eps, TheoremTag tag,
                   double failure) {
  BoundInterval b;
  b.index = index;
  b.vacuous_lower = lower < 0.0;
  b.lower = b.vacuous_lower ? 0.0 : lower;
  b.upper = upper;
  b.epsilon = eps;
  b.theorem = tag;
  b.failure_prob = failure;
  return b;
}

// lambda_i (1 -/+ factor), i = 1..d.
std::vector<BoundInterval> lowdim_relative(const Spectrum& sigma_eigs, double lower_factor,
                                           double upper_factor, double eps, TheoremTag tag,
                                           double failure) {
  std::vector<BoundInterval> out;
  out.reserve(sigma_eigs.size());
  for (std::size_t i = 1; i <= sigma_eigs.size(); ++i) {
    const double lam = sigma_eigs.lambda(i);
    out.push_back(make(static_cast<int>(i), lam * lower_factor, lam * upper_factor, eps, tag, failure));
  }
  return out;
}

// (d/n) [lambda_{i+d-n} * lower_factor, lambda_i * upper_factor], i = 1..n.
std::vector<BoundInterval> highdim_relative(const Spectrum& sigma_eigs, int n, int d,
                                            double lower_factor, double upper_factor, double eps,
                                            TheoremTag tag, double failure) {
  const double scale = static_cast<double>(d) / static_cast<double>(n);
  const auto shift = static_cast<std::size_t>(d - n);
  std::vector<BoundInterval> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
    const double lower = (sigma_eigs.lambda(i + shift) * lower_factor) * scale;
    const double upper = (sigma_eigs.lambda(i) * upper_factor) * scale;
    out.push_back(make(static_cast<int>(i), lower, upper, eps, tag, failure));
  }
  return out;
}

}  // namespace

std::string_view to_string(TheoremTag tag) noexcept {
  for (const auto& [value, name] : kTagNames) {
    if (value == tag) return name;
  }
  return "?";
}

std::optional<TheoremTag> theorem_from_string(std::string_view name) noexcept {
  for (const auto& [value, n] : kTagNames) {
    if (n == name) return value;
  }
  return std::nullopt;
}

const std::vector<TheoremTag>& all_theorems() noexcept {
  static const std::vector<TheoremTag> tags = [] {
    std::vector<TheoremTag> v;
    for (const auto& entry : kTagNames) v.push_back(entry.first);
    return v;
  }();
  return tags;
}

bool BoundInterval::is_expectation() const noexcept {
  return theorem == TheoremTag::IsotropicRowsExpectation;
}

void ConstantsConfig::validate() const {
  const std::array<std::pair<double, const char*>, 10> entries{{
      {subgaussian_C, "subgaussian_C"},
      {bounded_norm_c, "bounded_norm_c"},
      {entries_highdim_C, "entries_highdim_C"},
      {rows_highdim_C_K, "rows_highdim_C_K"},
      {rows_highdim_c_K, "rows_highdim_c_K"},
      {rosenthal_C, "rosenthal_C"},
      {square_C_K, "square_C_K"},
      {square_c_K, "square_c_K"},
      {square_C_tilde, "square_C_tilde"},
      {incoherence_C, "incoherence_C"},
  }};
  for (const auto& [value, name] : entries) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorKind::InvalidInput, std::string("constant ") + name + " must be finite and > 0");
    }
  }
}

EpsilonFactor with_failure(double epsilon, double factor, double raw_failure) {
  EpsilonFactor e;
  e.epsilon = epsilon;
  e.factor = factor;
  e.vacuous = raw_failure >= 1.0;
  e.failure_prob = std::clamp(raw_failure, 0.0, 1.0);
  return e;
}

EpsilonFactor eps_lowdim_subgaussian(int n, int d, double t, double K, const ConstantsConfig& cfg) {
  require_lowdim(n, d, "sub-gaussian low-dimensional bound");
  require_nonneg(t, "t");
  require_positive(K, "K");
  const double eps = std::sqrt(static_cast<double>(d) / n) + t / std::sqrt(static_cast<double>(n));
  return with_failure(eps, cfg.subgaussian_C * K * K * max_eps(eps), 2.0 * std::exp(-t * t));
}

std::vector<BoundInterval> interval_lowdim_subgaussian(const Spectrum& sigma_eigs, int n, int d,
                                                       double t, double K,
                                                       const ConstantsConfig& cfg) {
  const EpsilonFactor e = eps_lowdim_subgaussian(n, d, t, K, cfg);
  require_spectrum(sigma_eigs, d);
  return lowdim_relative(sigma_eigs, 1.0 - e.factor, 1.0 + e.factor, e.epsilon,
                         TheoremTag::SubgaussianLowDim, e.failure_prob);
}

EpsilonFactor eps_gaussian(int n, int d, double t) {
  require_lowdim(n, d, "Gaussian bound");
  require_nonneg(t, "t");
  const double eps = std::sqrt(static_cast<double>(d) / n) + t / std::sqrt(static_cast<double>(n));
  return with_failure(eps, 2.0 * eps + eps * eps, 2.0 * std::exp(-t * t / 2.0));
}

std::vector<BoundInterval> interval_gaussian(const Spectrum& sigma_eigs, int n, int d, double t) {
  const EpsilonFactor e = eps_gaussian(n, d, t);
  require_spectrum(sigma_eigs, d);
  return lowdim_relative(sigma_eigs, 1.0 - e.factor, 1.0 + e.factor, e.epsilon,
                         TheoremTag::GaussianLowDim, e.failure_prob);
}

double gaussian_t_for_failure(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
  return std::sqrt(2.0 * std::log(2.0 / delta));
}

EpsilonFactor eps_bounded_norm(int n, int d, double m_bound, double t, const ConstantsConfig& cfg) {
  require_lowdim(n, d, "bounded-norm bound");
  require_nonneg(t, "t");
  if (!(m_bound >= d)) {
    throw Error(ErrorKind::InvalidInput, "isotropic rows have E||z||^2 = d, so m_bound >= d");
  }
  const double eps = t * std::sqrt(m_bound / n);
  return with_failure(eps, max_eps(eps), 2.0 * d * std::exp(-cfg.bounded_norm_c * t * t));
}

std::vector<BoundInterval> interval_bounded_norm(const Spectrum& sigma_eigs, int n, int d,
                                                 double m_bound, double t,
                                                 const ConstantsConfig& cfg) {
  const EpsilonFactor e = eps_bounded_norm(n, d, m_bound, t, cfg);
  require_spectrum(sigma_eigs, d);
  return lowdim_relative(sigma_eigs, 1.0 - e.factor, 1.0 + e.factor, e.epsilon,
                         TheoremTag::BoundedNormLowDim, e.failure_prob);
}

double bounded_norm_t_for_failure(int d, double delta, const ConstantsConfig& cfg) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(ErrorKind::InvalidInput, "delta must lie in (0, 1)");
  if (d < 1) throw Error(ErrorKind::InvalidInput, "d must be >= 1");
  return std::sqrt(std::log(2.0 * d / delta) / cfg.bounded_norm_c);
}

EpsilonFactor eps_highdim_subgaussian(int n, int d, double t, double K, const ConstantsConfig& cfg) {
  require_highdim(n, d, "independent-entries high-dimensional bound");
  require_nonneg(t, "t");
  require_positive(K, "K");
  const double eps = std::sqrt(static_cast<double>(n) / d) + t / std::sqrt(static_cast<double>(d));
  return with_failure(eps, cfg.entries_highdim_C * K * K * max_eps(eps), 2.0 * std::exp(-t * t));
}

std::vector<BoundInterval> interval_highdim_subgaussian(const Spectrum& sigma_eigs, int n, int d,
                                                        double t, double K,
                                                        const ConstantsConfig& cfg) {
  const EpsilonFactor e = eps_highdim_subgaussian(n, d, t, K, cfg);
  require_spectrum(sigma_eigs, d);
  return highdim_relative(sigma_eigs, n, d, 1.0 - e.factor, 1.0 + e.factor, e.epsilon,
                          TheoremTag::SubgaussianEntriesHighDim, e.failure_prob);
}

double moment_budget(int n, int p, double K2p, const ConstantsConfig& cfg) {
  if (n < 1) throw Error(ErrorKind::SpecError, "moment budget needs n >= 1");
  if (p < 1) throw Error(ErrorKind::SpecError, "moment budget needs p >= 1");
  if (!(K2p > 0.0)) throw Error(ErrorKind::SpecError, "moment budget needs K(2p) > 0");
  const double nn = n;
  const double root = std::pow(nn, 1.0 / p);
  return cfg.rosenthal_C * (p / std::log(p + 1.0)) * root * std::max(nn, root * K2p * K2p) *
         std::log(nn);
}

EpsilonFactor eps_highdim_independent(int n, int d, const IndependentRowsParams& params,
                                      const ConstantsConfig& cfg) {
  require_highdim(n, d, "constant-norm rows bound", ErrorKind::SpecError);
  if (params.mode == IndependentRowsMode::HighProb) {
    if (!(params.t >= 0.0)) throw Error(ErrorKind::SpecError, "high-probability mode needs t >= 0");
    const double eps = cfg.rows_highdim_C_K * std::sqrt(static_cast<double>(n) / d) +
                       params.t / std::sqrt(static_cast<double>(d));
    return with_failure(eps, max_eps(eps), 2.0 * std::exp(-cfg.rows_highdim_c_K * params.t * params.t));
  }
  const double eps = std::sqrt(moment_budget(n, params.p, params.K2p, cfg) / d);
  EpsilonFactor e;
  e.epsilon = eps;
  e.factor = eps;
  e.failure_prob = kExpectationSentinel;
  return e;
}

std::vector<BoundInterval> interval_highdim_independent(const Spectrum& sigma_eigs, int n, int d,
                                                        const IndependentRowsParams& params,
                                                        const ConstantsConfig& cfg) {
  const EpsilonFactor e = eps_highdim_independent(n, d, params, cfg);
  require_spectrum(sigma_eigs, d);
  const TheoremTag tag = params.mode == IndependentRowsMode::HighProb
                             ? TheoremTag::IsotropicRowsHighDim
                             : TheoremTag::IsotropicRowsExpectation;
  return highdim_relative(sigma_eigs, n, d, 1.0 - e.factor, 1.0 + e.factor, e.epsilon, tag,
                          e.failure_prob);
}

SquareFactors square_factors_tall(int n, int d, double t1, double t2, double K,
                                  const ConstantsConfig& cfg) {
  // n >= d: smallest singular value of the n x d matrix Z.
  SquareFactors f;
  f.epsilon1 = std::sqrt(static_cast<double>(d - 1) / n);
  f.epsilon2 = std::sqrt(static_cast<double>(d) / n) + t2 / std::sqrt(static_cast<double>(n));
  f.lower_factor = (1.0 / (t1 * t1)) * (1.0 - f.epsilon1) * (1.0 - f.epsilon1);
  f.upper_factor = 1.0 + cfg.square_C_tilde * K * K * max_eps(f.epsilon2);
  const double raw = std::pow(cfg.square_C_K / t1, n - d + 1) + std::exp(-cfg.square_c_K * n) +
                     2.0 * std::exp(-t2 * t2);
  f.vacuous = raw >= 1.0;
  f.failure_prob = std::clamp(raw, 0.0, 1.0);
  return f;
}

SquareFactors square_factors_wide(int n, int d, double t1, double t2, double K,
                                  const ConstantsConfig& cfg) {
  // d >= n: the same statement applied to Z^T.
  SquareFactors f;
  f.epsilon1 = std::sqrt(static_cast<double>(n - 1) / d);
  f.epsilon2 = std::sqrt(static_cast<double>(n) / d) + t2 / std::sqrt(static_cast<double>(d));
  f.lower_factor = (1.0 / (t1 * t1)) * (1.0 - f.epsilon1) * (1.0 - f.epsilon1);
  f.upper_factor = 1.0 + cfg.square_C_tilde * K * K * max_eps(f.epsilon2);
  const double raw = std::pow(cfg.square_C_K / t1, d - n + 1) + std::exp(-cfg.square_c_K * d) +
                     2.0 * std::exp(-t2 * t2);
  f.vacuous = raw >= 1.0;
  f.failure_prob = std::clamp(raw, 0.0, 1.0);
  return f;
}

namespace {

void require_square_inputs(int n, int d, double t1, double t2, double K) {
  if (n < 1 || d < 1) throw Error(ErrorKind::InvalidInput, "n and d must be >= 1");
  if (!(t1 > 0.0)) throw Error(ErrorKind::InvalidInput, "t1 must be > 0");
  require_nonneg(t2, "t2");
  require_positive(K, "K");
}

}  // namespace

SquareFactors square_factors(int n, int d, double t1, double t2, double K, const ConstantsConfig& cfg) {
  require_square_inputs(n, d, t1, t2, K);
  return n >= d ? square_factors_tall(n, d, t1, t2, K, cfg) : square_factors_wide(n, d, t1, t2, K, cfg);
}

std::vector<BoundInterval> interval_square(const Spectrum& sigma_eigs, int n, int d, double t1,
                                           double t2, double K, const ConstantsConfig& cfg,
                                           SquareBranch branch) {
  require_square_inputs(n, d, t1, t2, K);
  require_spectrum(sigma_eigs, d);
  if (branch == SquareBranch::Tall) {
    if (n < d) throw Error(ErrorKind::RegimeError, "tall branch needs n >= d");
    const SquareFactors f = square_factors_tall(n, d, t1, t2, K, cfg);
    return lowdim_relative(sigma_eigs, f.lower_factor, f.upper_factor, f.epsilon2,
                           TheoremTag::NearlySquare, f.failure_prob);
  }
  if (d < n) throw Error(ErrorKind::RegimeError, "wide branch needs d >= n");
  const SquareFactors f = square_factors_wide(n, d, t1, t2, K, cfg);
  return highdim_relative(sigma_eigs, n, d, f.lower_factor, f.upper_factor, f.epsilon2,
                          TheoremTag::NearlySquare, f.failure_prob);
}

std::vector<BoundInterval> interval_square(const Spectrum& sigma_eigs, int n, int d, double t1,
                                           double t2, double K, const ConstantsConfig& cfg) {
  return interval_square(sigma_eigs, n, d, t1, t2, K, cfg,
                         n >= d ? SquareBranch::Tall : SquareBranch::Wide);
}

Interval bai_yin_range(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw Error(ErrorKind::InvalidInput, "gamma must lie in (0, 1)");
  const double r = std::sqrt(gamma);
  return {(1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r)};
}

std::vector<TheoremTag> select_theorem(const DistributionSpec& spec, int n, int d) {
  if (n < 1 || d < 1) throw Error(ErrorKind::InvalidInput, "n and d must be >= 1");
  const bool low = d <= n;
  std::vector<TheoremTag> tags;
  switch (spec.family) {
    case Family::GaussianSigma:
      tags.push_back(low ? TheoremTag::GaussianLowDim : TheoremTag::SubgaussianEntriesHighDim);
      break;
    case Family::SubgaussianEntries:
      tags.push_back(low ? TheoremTag::SubgaussianLowDim : TheoremTag::SubgaussianEntriesHighDim);
      break;
    case Family::SphereIsotropic:
    case Family::CoordinateBasis:
      tags.push_back(low ? TheoremTag::BoundedNormLowDim : TheoremTag::IsotropicRowsHighDim);
      break;
    case Family::BoundedNormCustom:
      if (!low) {
        throw Error(ErrorKind::Unsupported,
                    "no bound covers BoundedNormCustom rows with d > n (norm is not constant)");
      }
      tags.push_back(TheoremTag::BoundedNormLowDim);
      break;
  }
  if (has_iid_entries(spec) &&
      std::abs(std::log(static_cast<double>(d) / static_cast<double>(n))) <= std::log(2.0)) {
    tags.push_back(TheoremTag::NearlySquare);
  }
  return tags;
}

bool has_interval_constant(TheoremTag tag) noexcept {
  ConstantsConfig probe;
  return interval_constant(probe, tag) != nullptr;
}

double* interval_constant(ConstantsConfig& cfg, TheoremTag tag) noexcept {
  switch (tag) {
    case TheoremTag::SubgaussianLowDim: return &cfg.subgaussian_C;
    case TheoremTag::SubgaussianEntriesHighDim: return &cfg.entries_highdim_C;
    case TheoremTag::IsotropicRowsHighDim: return &cfg.rows_highdim_C_K;
    case TheoremTag::IsotropicRowsExpectation: return &cfg.rosenthal_C;
    case TheoremTag::NearlySquare: return &cfg.square_C_tilde;
    default: return nullptr;
  }
}

std::vector<BoundInterval> evaluate_bound(TheoremTag tag, const Spectrum& sigma_eigs, int n, int d,
                                          const BoundInputs& in, const ConstantsConfig& cfg) {
  switch (tag) {
    case TheoremTag::SubgaussianLowDim:
      return interval_lowdim_subgaussian(sigma_eigs, n, d, in.t, in.K, cfg);
    case TheoremTag::GaussianLowDim:
      return interval_gaussian(sigma_eigs, n, d, in.t);
    case TheoremTag::BoundedNormLowDim:
      if (!(in.m_bound > 0.0)) throw Error(ErrorKind::SpecError, "bounded-norm bound needs m_bound");
      return interval_bounded_norm(sigma_eigs, n, d, in.m_bound, in.t, cfg);
    case TheoremTag::SubgaussianEntriesHighDim:
      return interval_highdim_subgaussian(sigma_eigs, n, d, in.t, in.K, cfg);
    case TheoremTag::IsotropicRowsHighDim:
      return interval_highdim_independent(sigma_eigs, n, d,
                                          {IndependentRowsMode::HighProb, in.t, 0, 0.0}, cfg);
    case TheoremTag::IsotropicRowsExpectation:
      return interval_highdim_independent(
          sigma_eigs, n, d, {IndependentRowsMode::Expectation, 0.0, in.p, in.K2p}, cfg);
    case TheoremTag::NearlySquare:
      return interval_square(sigma_eigs, n, d, in.t1, in.t, in.K, cfg);
    case TheoremTag::DeterministicLowDim:
    case TheoremTag::DeterministicHighDim:
      break;
  }
  throw Error(ErrorKind::SpecError,
              std::string(to_string(tag)) + " needs the realized deviation, not closed-form inputs");
}

}  // namespace spectra
