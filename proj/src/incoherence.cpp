#include "spectra/incoherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectra/error.hpp"
#include "spectra/kernels.hpp"
#include "spectra/parallel.hpp"

namespace spectra {

double max_offdiag_row_sq_sum(const DataMatrix& z) {
  const auto n = static_cast<std::size_t>(z.n());
  const auto d = static_cast<std::size_t>(z.d());
  const bool compensated = static_cast<double>(n) * static_cast<double>(d) > kCompensatedGramThreshold;
  std::vector<double> g(n * n);
  kernels::row_gram(z.rows().data(), n, d, d, g.data(), compensated);
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) s += g[j * n + k] * g[j * n + k];
    }
    best = std::max(best, s);
  }
  return best;
}

IncoherenceEstimate empirical_incoherence(const DistributionSpec& spec, Index n, int trials, Seed seed,
                                          int workers) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "incoherence needs n >= 2");
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "incoherence needs trials >= 1");
  spec.validate();
  const auto per_trial = parallel_map<double>(static_cast<std::size_t>(trials), workers, [&](std::size_t k) {
    const DataMatrix z = sample_Z(spec, n, derive_seed(seed, k, spec.seed_stream));
    return max_offdiag_row_sq_sum(z) / static_cast<double>(spec.d);
  });
  IncoherenceEstimate e;
  e.empirical_m = std::accumulate(per_trial.begin(), per_trial.end(), 0.0) / trials;
  e.trials = trials;
  e.n = n;
  e.d = spec.d;
  return e;
}

IsotropicIdentity check_isotropic_identity(const DistributionSpec& spec, Index n_pairs, Seed seed) {
  if (n_pairs < 1000) {
    throw Error(ErrorKind::InsufficientSamples, "isotropic identity check needs >= 1000 pairs");
  }
  spec.validate();
  const DataMatrix z1 = sample_Z(spec, n_pairs, derive_seed(seed, 0, "pairs-first"));
  const DataMatrix z2 = sample_Z(spec, n_pairs, derive_seed(seed, 1, "pairs-second"));
  double inner = 0.0;
  double norm = 0.0;
  for (Index i = 0; i < n_pairs; ++i) {
    const double ip = kernels::dot(z1.row(i), z2.row(i));
    inner += ip * ip;
    norm += kernels::dot(z1.row(i), z1.row(i));
  }
  return {inner / static_cast<double>(n_pairs), norm / static_cast<double>(n_pairs)};
}

double rosenthal_incoherence_bound(double sum_sq, double sum_2p, Index n, Index d, double p,
                                   const ConstantsConfig& cfg) {
  if (!(p > 1.0)) throw Error(ErrorKind::InvalidInput, "Rosenthal bound needs p > 1");
  if (n < 1 || d < 1) throw Error(ErrorKind::InvalidInput, "n and d must be >= 1");
  if (!(sum_sq >= 0.0) || !(sum_2p >= 0.0)) throw Error(ErrorKind::InvalidInput, "moment sums must be >= 0");
  const double nn = static_cast<double>(n);
  return cfg.rosenthal_C * (p / std::log(p)) * std::pow(nn, 1.0 / p) / static_cast<double>(d) *
         std::max(sum_sq, std::pow(sum_2p, 1.0 / p));
}

double corollary_incoherence_bound(Index n, int p, double K2p, const ConstantsConfig& cfg) {
  if (p < 1) throw Error(ErrorKind::InvalidInput, "p must be >= 1");
  if (!(K2p > 0.0)) throw Error(ErrorKind::InvalidInput, "K(2p) must be > 0");
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  const double nn = static_cast<double>(n);
  const double root = std::pow(nn, 1.0 / p);
  return cfg.rosenthal_C * (p / (std::log(static_cast<double>(p)) + 1.0)) * root *
         std::max(nn, root * K2p * K2p);
}

double expectation_deviation_bound(double m_bound, Index n, Index d, const ConstantsConfig& cfg) {
  if (!(m_bound >= 0.0)) throw Error(ErrorKind::InvalidInput, "m must be >= 0");
  if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be >= 2");
  if (d < 1) throw Error(ErrorKind::InvalidInput, "d must be >= 1");
  return cfg.incoherence_C * std::sqrt(m_bound * std::log(static_cast<double>(n)) / static_cast<double>(d));
}

}  // namespace spectra
