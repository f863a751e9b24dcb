#include "spectra/sandwich.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spectra/error.hpp"

namespace spectra {

namespace {

int count_at_least(const Spectrum& eigs, double a) {
  const double norm = std::max(std::abs(eigs.max()), std::abs(eigs.min()));
  const double threshold = a - eig_tolerance(norm);
  return static_cast<int>(std::count_if(eigs.values().begin(), eigs.values().end(),
                                        [&](double v) { return v >= threshold; }));
}

int count_at_most(const Spectrum& eigs, double b) {
  const double norm = std::max(std::abs(eigs.max()), std::abs(eigs.min()));
  const double threshold = b + eig_tolerance(norm);
  return static_cast<int>(std::count_if(eigs.values().begin(), eigs.values().end(),
                                        [&](double v) { return v <= threshold; }));
}

void require_compatible(const SymMatrix& sigma, const DataMatrix& z) {
  if (sigma.dim() != z.d()) {
    throw Error(ErrorKind::InvalidInput, "Sigma is " + std::to_string(sigma.dim()) +
                                             "-dimensional but Z has " + std::to_string(z.d()) +
                                             " columns");
  }
}

// Z * Sigma * Z^T, n x n.
SymMatrix outer_congruence(const SymMatrix& sigma, const DataMatrix& z) {
  return SymMatrix(Eigen::MatrixXd(z.rows() * sigma.matrix() * z.rows().transpose()));
}

BoundInterval make_interval(int index, double lower, double upper, double eps, TheoremTag tag,
                            double failure_prob) {
  BoundInterval b;
  b.index = index;
  b.vacuous_lower = lower < 0.0;
  b.lower = b.vacuous_lower ? 0.0 : lower;
  b.upper = upper;
  b.epsilon = eps;
  b.theorem = tag;
  b.failure_prob = failure_prob;
  return b;
}

}  // namespace

std::string_view to_string(Regime r) noexcept { return r == Regime::LowDim ? "LowDim" : "HighDim"; }

std::vector<SandwichResult> ostrowski_sandwich_all(const SymMatrix& sigma, const DataMatrix& z) {
  require_compatible(sigma, z);
  const Spectrum sigma_eigs = psd_eigvals_desc(sigma);
  const SymMatrix root = psd_sqrt(sigma);
  const SymMatrix ztz = empirical_second_moment(z).scaled(static_cast<double>(z.n()));
  const Spectrum ztz_eigs = psd_eigvals_desc(ztz);
  const Spectrum middle = psd_eigvals_desc(congruence(root, ztz));

  const auto n = static_cast<std::size_t>(z.n());
  const auto d = static_cast<std::size_t>(z.d());
  const std::size_t m = std::min(n, d);
  const Regime regime = d <= n ? Regime::LowDim : Regime::HighDim;

  std::vector<SandwichResult> out;
  out.reserve(m);
  for (std::size_t i = 1; i <= m; ++i) {
    SandwichResult r;
    r.index = static_cast<int>(i);
    r.lower = sigma_eigs.lambda(i + d - m) * ztz_eigs.lambda(m);
    r.middle = middle.lambda(i);
    r.upper = sigma_eigs.lambda(i) * ztz_eigs.lambda(1);
    r.regime = regime;
    out.push_back(r);
  }
  return out;
}

SandwichResult ostrowski_sandwich(const SymMatrix& sigma, const DataMatrix& z, int i) {
  const auto m = std::min(z.n(), z.d());
  if (i < 1 || i > m) {
    throw Error(ErrorKind::IndexError,
                "index " + std::to_string(i) + " outside [1, " + std::to_string(m) + "]");
  }
  return ostrowski_sandwich_all(sigma, z)[static_cast<std::size_t>(i - 1)];
}

bool sandwich_holds(const SandwichResult& r, double rel_tol) noexcept {
  const double tol = rel_tol * std::max(1.0, std::abs(r.middle));
  return r.lower <= r.middle + tol && r.middle <= r.upper + tol;
}

std::vector<BoundInterval> relative_sandwich_lowdim(const Spectrum& sigma_eigs, double dev) {
  if (!(dev >= 0.0)) throw Error(ErrorKind::InvalidInput, "dev must be >= 0");
  std::vector<BoundInterval> out;
  out.reserve(sigma_eigs.size());
  for (std::size_t i = 1; i <= sigma_eigs.size(); ++i) {
    const double lam = sigma_eigs.lambda(i);
    out.push_back(make_interval(static_cast<int>(i), lam * (1.0 - dev), lam * (1.0 + dev), dev,
                                TheoremTag::DeterministicLowDim, 0.0));
  }
  return out;
}

std::vector<BoundInterval> relative_sandwich_highdim(const Spectrum& sigma_eigs, double dev, int n,
                                                     int d) {
  if (n < 1 || d < n) {
    throw Error(ErrorKind::RegimeError, "high-dimensional sandwich needs d >= n >= 1 (n=" +
                                            std::to_string(n) + ", d=" + std::to_string(d) + ")");
  }
  if (sigma_eigs.size() != static_cast<std::size_t>(d)) {
    throw Error(ErrorKind::InvalidInput, "population spectrum must have d entries");
  }
  if (!(dev >= 0.0)) throw Error(ErrorKind::InvalidInput, "dev must be >= 0");
  const double scale = static_cast<double>(d) / static_cast<double>(n);
  const auto shift = static_cast<std::size_t>(d - n);
  std::vector<BoundInterval> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::size_t i = 1; i <= static_cast<std::size_t>(n); ++i) {
    const double lower = (sigma_eigs.lambda(i + shift) * (1.0 - dev)) * scale;
    const double upper = (sigma_eigs.lambda(i) * (1.0 + dev)) * scale;
    out.push_back(make_interval(static_cast<int>(i), lower, upper, dev,
                                TheoremTag::DeterministicHighDim, 0.0));
  }
  return out;
}

int count_eigs_at_least(const SymMatrix& m, double a) { return count_at_least(sym_eigvals_desc(m), a); }

int count_eigs_at_most(const SymMatrix& m, double b) { return count_at_most(sym_eigvals_desc(m), b); }

VariationalCheck check_variational_lower(const SymMatrix& sigma, const DataMatrix& z, double a1,
                                         double a2) {
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw Error(ErrorKind::InvalidInput, "a1 and a2 must be > 0");
  require_compatible(sigma, z);
  VariationalCheck c;
  c.r = count_eigs_at_least(gram(z), a1);
  c.s = count_eigs_at_least(sigma, a2);
  c.required = c.r + c.s - static_cast<int>(z.d());
  c.observed = count_eigs_at_least(outer_congruence(sigma, z), a1 * a2);
  return c;
}

VariationalCheck check_variational_upper(const SymMatrix& sigma, const DataMatrix& z, double b1,
                                         double b2) {
  if (!(b2 > 0.0)) throw Error(ErrorKind::InvalidInput, "b2 must be > 0");
  if (!(b1 >= 0.0)) throw Error(ErrorKind::InvalidInput, "b1 must be >= 0");
  require_compatible(sigma, z);
  VariationalCheck c;
  c.r = count_eigs_at_most(gram(z), b1);
  c.s = count_eigs_at_most(sigma, b2);
  c.required = c.r + c.s - static_cast<int>(z.d());
  c.observed = count_eigs_at_most(outer_congruence(sigma, z), b1 * b2);
  return c;
}

bool verify_variational_lower(const SymMatrix& sigma, const DataMatrix& z, double a1, double a2) {
  return check_variational_lower(sigma, z, a1, a2).holds();
}

bool verify_variational_upper(const SymMatrix& sigma, const DataMatrix& z, double b1, double b2) {
  return check_variational_upper(sigma, z, b1, b2).holds();
}

}  // namespace spectra
