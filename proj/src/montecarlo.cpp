#include "spectra/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spectra/error.hpp"
#include "spectra/parallel.hpp"
#include "spectra/sandwich.hpp"

namespace spectra {

namespace {

struct Job {
  TheoremTag tag;
  double t;
  std::vector<BoundInterval> intervals;
};

struct TrialOutcome {
  std::vector<std::vector<int>> violating;  // per job, 1-based indices
  long long guard_violations = 0;
};

bool is_deterministic(TheoremTag tag) {
  return tag == TheoremTag::DeterministicLowDim || tag == TheoremTag::DeterministicHighDim;
}

DataMatrix sample_trial(const DistributionSpec& spec, const std::optional<CovarianceFactor>& factor,
                        Index n, Seed seed, DataMatrix* z_out) {
  DataMatrix z = sample_Z(spec, n, seed);
  if (!factor) {
    if (z_out) *z_out = z;
    return z;
  }
  DataMatrix x = factor->apply(z);
  if (z_out) *z_out = std::move(z);
  return x;
}

// Realized-deviation sandwich for one trial; counts indices outside.
long long guardrail_violations(const DataMatrix& z, const Spectrum& pop, const Spectrum& emp) {
  const Index n = z.n();
  const Index d = z.d();
  std::vector<BoundInterval> intervals;
  if (d <= n) {
    const double dev = deviation_from_identity(empirical_second_moment(z));
    intervals = relative_sandwich_lowdim(pop, dev);
  } else {
    const double dev = deviation_from_identity(gram(z).scaled(1.0 / static_cast<double>(d)));
    intervals = relative_sandwich_highdim(pop, dev, static_cast<int>(n), static_cast<int>(d));
  }
  const double tol = 1e-9 * std::max(emp.max(), 0.0);
  long long bad = 0;
  for (const auto& b : intervals) {
    const double v = emp.lambda(static_cast<std::size_t>(b.index));
    if (v < b.lower - tol || v > b.upper + tol) ++bad;
  }
  return bad;
}

std::vector<int> violating_indices(const std::vector<BoundInterval>& intervals, const Spectrum& emp) {
  std::vector<int> out;
  for (const auto& b : intervals) {
    if (!b.contains(emp.lambda(static_cast<std::size_t>(b.index)))) out.push_back(b.index);
  }
  return out;
}

BoundInputs resolve_inputs(TheoremTag tag, const DistributionSpec& spec, BoundInputs in) {
  if (tag == TheoremTag::BoundedNormLowDim && !(in.m_bound > 0.0)) {
    const auto m = almost_sure_sq_norm_bound(spec);
    if (!m) {
      throw Error(ErrorKind::SpecError, std::string(to_string(spec.family)) +
                                            " has no almost-sure norm bound; set m_bound");
    }
    in.m_bound = *m;
  }
  return in;
}

std::vector<BoundInterval> intervals_for(TheoremTag tag, const Spectrum& pop, const DistributionSpec& spec,
                                         Index n, const BoundInputs& in, const ConstantsConfig& constants) {
  try {
    return evaluate_bound(tag, pop, static_cast<int>(n), static_cast<int>(spec.d),
                          resolve_inputs(tag, spec, in), constants);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RegimeError) throw Error(ErrorKind::SpecError, e.what());
    throw;
  }
}

double median(std::vector<double> v) {
  if (v.empty()) throw Error(ErrorKind::InvalidInput, "median of an empty set");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double max_relative_deviation(const Spectrum& emp, const Spectrum& pop, Index n, Index d) {
  const double scale = d > n ? static_cast<double>(n) / static_cast<double>(d) : 1.0;
  double worst = 0.0;
  for (std::size_t i = 1; i <= emp.size(); ++i) {
    worst = std::max(worst, std::abs(scale * emp.lambda(i) / pop.lambda(i) - 1.0));
  }
  return worst;
}

// Sigma = I for sweeps and calibration grids whose d changes per point.
DistributionSpec with_dimension(DistributionSpec spec, Index d) {
  if (spec.family == Family::GaussianSigma) {
    if (spec.sigma_factor && spec.sigma_factor->dim() != d) {
      spec.sigma_factor = CovarianceFactor::diagonal(std::vector<double>(static_cast<std::size_t>(d), 1.0));
    } else if (!spec.sigma_factor) {
      spec.sigma_factor = CovarianceFactor::diagonal(std::vector<double>(static_cast<std::size_t>(d), 1.0));
    }
  } else if (spec.sigma_factor && spec.sigma_factor->dim() != d) {
    throw Error(ErrorKind::SpecError, "a fixed covariance factor cannot follow a changing dimension");
  }
  spec.d = d;
  return spec;
}

std::vector<Spectrum> sample_spectra(const DistributionSpec& spec,
                                     const std::optional<CovarianceFactor>& factor, Index n, int trials,
                                     Seed seed, int workers) {
  return parallel_map<Spectrum>(static_cast<std::size_t>(trials), workers, [&](std::size_t k) {
    return empirical_spectrum(sample_trial(spec, factor, n, derive_seed(seed, k, spec.seed_stream), nullptr));
  });
}

}  // namespace

void ExperimentConfig::validate() const {
  spec.validate();
  if (n < 1) throw Error(ErrorKind::SpecError, "n must be >= 1");
  if (trials < 1) throw Error(ErrorKind::SpecError, "trials must be >= 1");
  if (t_grid.empty()) throw Error(ErrorKind::SpecError, "t_grid must be nonempty");
  for (double t : t_grid) {
    if (!(t >= 0.0)) throw Error(ErrorKind::SpecError, "t values must be >= 0");
  }
  if (spec.sigma_factor && downstream_sigma) {
    throw Error(ErrorKind::SpecError, "give either the family's sigma factor or a downstream one, not both");
  }
  if (downstream_sigma && downstream_sigma->dim() != spec.d) {
    throw Error(ErrorKind::SpecError, "downstream sigma factor does not match d");
  }
  constants.validate();
}

double wilson_halfwidth(int failures, int trials, double z) {
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
  if (failures < 0 || failures > trials) throw Error(ErrorKind::InvalidInput, "failures outside [0, trials]");
  const double nn = trials;
  const double p = failures / nn;
  const double z2 = z * z;
  return z / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

std::optional<CovarianceFactor> population_factor(const DistributionSpec& spec,
                                                  const std::optional<CovarianceFactor>& downstream) {
  if (spec.sigma_factor) return spec.sigma_factor;
  return downstream;
}

Spectrum population_spectrum(const DistributionSpec& spec,
                             const std::optional<CovarianceFactor>& downstream) {
  const auto factor = population_factor(spec, downstream);
  if (factor) return factor->population_spectrum();
  return Spectrum(std::vector<double>(static_cast<std::size_t>(spec.d), 1.0));
}

CoverageRun run_coverage(const ExperimentConfig& cfg) {
  cfg.validate();
  const Index n = cfg.n;
  const Index d = cfg.d();
  const auto factor = population_factor(cfg.spec, cfg.downstream_sigma);
  const Spectrum pop = population_spectrum(cfg.spec, cfg.downstream_sigma);

  std::vector<TheoremTag> tags = cfg.theorems;
  if (tags.empty()) tags = select_theorem(cfg.spec, static_cast<int>(n), static_cast<int>(d));

  std::vector<Job> jobs;
  for (TheoremTag tag : tags) {
    if (is_deterministic(tag)) {
      throw Error(ErrorKind::SpecError, "realized-deviation bounds run as the guardrail, not as a coverage target");
    }
    if (tag == TheoremTag::IsotropicRowsExpectation) {
      throw Error(ErrorKind::SpecError, "expectation bounds are checked by trial averaging, not coverage");
    }
    for (double t : cfg.t_grid) {
      BoundInputs in = cfg.inputs;
      in.t = t;
      jobs.push_back({tag, t, intervals_for(tag, pop, cfg.spec, n, in, cfg.constants)});
    }
  }

  const auto outcomes =
      parallel_map<TrialOutcome>(static_cast<std::size_t>(cfg.trials), cfg.workers, [&](std::size_t k) {
        DataMatrix z(1, 1);
        const DataMatrix x = sample_trial(cfg.spec, factor, n, derive_seed(cfg.seed, k, cfg.spec.seed_stream), &z);
        const Spectrum emp = empirical_spectrum(x);
        TrialOutcome o;
        o.guard_violations = guardrail_violations(z, pop, emp);
        o.violating.reserve(jobs.size());
        for (const auto& job : jobs) o.violating.push_back(violating_indices(job.intervals, emp));
        return o;
      });

  CoverageRun run;
  run.guardrail.trials = cfg.trials;
  for (const auto& o : outcomes) run.guardrail.violations += o.guard_violations;

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& job = jobs[j];
    CoverageReport r;
    r.theorem = job.tag;
    r.t = job.t;
    r.epsilon = job.intervals.front().epsilon;
    r.theoretical_failure = job.intervals.front().failure_prob;
    r.trials = cfg.trials;
    r.per_index_violations.assign(job.intervals.size(), 0);
    for (const auto& o : outcomes) {
      if (!o.violating[j].empty()) ++r.failures;
      for (int idx : o.violating[j]) ++r.per_index_violations[static_cast<std::size_t>(idx - 1)];
    }
    r.empirical_failure = static_cast<double>(r.failures) / cfg.trials;
    r.wilson_halfwidth = wilson_halfwidth(r.failures, r.trials);
    run.reports.push_back(std::move(r));
  }
  return run;
}

RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidInput, "x and y differ in length");
  if (x.size() < 3) throw Error(ErrorKind::InvalidInput, "log-log fit needs >= 3 points");
  const auto k = static_cast<double>(x.size());
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "log-log fit needs positive values");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / k;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::InvalidInput, "log-log fit needs distinct x values");
  RateFit fit;
  fit.x_values = x;
  fit.y_values = y;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  const double ss_res = syy - fit.slope * sxy;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

RateFit run_rate_fit(const SweepConfig& cfg) {
  if (cfg.grid.size() < 4) throw Error(ErrorKind::InvalidInput, "rate sweep needs >= 4 grid points");
  const auto [lo, hi] = std::minmax_element(cfg.grid.begin(), cfg.grid.end());
  if (*lo < 1 || static_cast<double>(*hi) < 10.0 * static_cast<double>(*lo)) {
    throw Error(ErrorKind::InvalidInput, "rate sweep grid must span at least a factor of 10");
  }
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");

  std::vector<double> xs, ys;
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    const Index value = cfg.grid[g];
    const Index n = cfg.axis == SweepAxis::SampleCount ? value : cfg.fixed_n;
    const DistributionSpec spec =
        cfg.axis == SweepAxis::SampleCount ? cfg.spec : with_dimension(cfg.spec, value);
    spec.validate();
    const Spectrum pop = population_spectrum(spec, std::nullopt);
    const Seed point_seed = derive_seed(cfg.seed, g, "sweep-point");
    const auto spectra = sample_spectra(spec, spec.sigma_factor, n, cfg.trials, point_seed, cfg.workers);
    std::vector<double> devs;
    devs.reserve(spectra.size());
    for (const auto& emp : spectra) devs.push_back(max_relative_deviation(emp, pop, n, spec.d));
    xs.push_back(static_cast<double>(value));
    ys.push_back(median(std::move(devs)));
  }
  return fit_loglog(xs, ys);
}

ExpectationReport run_expectation_check(const ExpectationConfig& cfg) {
  cfg.spec.validate();
  const Index n = cfg.n;
  const Index d = cfg.spec.d;
  if (n < 1 || d < n) throw Error(ErrorKind::RegimeError, "expectation check needs d >= n >= 1");
  if (cfg.trials < 1000) throw Error(ErrorKind::InsufficientSamples, "expectation check needs >= 1000 trials");
  cfg.constants.validate();

  const auto factor = population_factor(cfg.spec, cfg.downstream_sigma);
  const Spectrum pop = population_spectrum(cfg.spec, cfg.downstream_sigma);
  const MomentEstimate kp = estimate_Kp(cfg.spec, 2 * cfg.p, cfg.kp_samples, cfg.kp_directions,
                                        derive_seed(cfg.seed, 0, "expectation-kp"));

  ExpectationReport r;
  r.n = n;
  r.d = d;
  r.trials = cfg.trials;
  r.p = cfg.p;
  r.K2p = kp.value;
  r.budget = moment_budget(static_cast<int>(n), cfg.p, kp.value, cfg.constants);
  r.intervals = interval_highdim_independent(pop, static_cast<int>(n), static_cast<int>(d),
                                             {IndependentRowsMode::Expectation, 0.0, cfg.p, kp.value},
                                             cfg.constants);
  r.epsilon = r.intervals.front().epsilon;

  const auto spectra = sample_spectra(cfg.spec, factor, n, cfg.trials, cfg.seed, cfg.workers);
  r.mean_eigs.assign(static_cast<std::size_t>(n), 0.0);
  for (const auto& emp : spectra) {
    for (std::size_t i = 0; i < r.mean_eigs.size(); ++i) r.mean_eigs[i] += emp[i];
  }
  r.all_inside = true;
  for (std::size_t i = 0; i < r.mean_eigs.size(); ++i) {
    r.mean_eigs[i] /= cfg.trials;
    const auto& b = r.intervals[i];
    const double margin = std::min(r.mean_eigs[i] - b.lower, b.upper - r.mean_eigs[i]);
    r.margins.push_back(margin);
    if (margin < 0.0) r.all_inside = false;
  }
  return r;
}

UniformRelativeReport run_uniform_vs_relative(Index n, Index d, double decay, int trials, Seed seed,
                                              double t, int workers) {
  if (d < 1 || d > n) throw Error(ErrorKind::RegimeError, "uniform-vs-relative comparison needs 1 <= d <= n");
  if (!(decay >= 0.0)) throw Error(ErrorKind::InvalidInput, "decay rate must be >= 0");
  if (trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");

  DistributionSpec spec;
  spec.family = Family::GaussianSigma;
  spec.d = d;
  spec.sigma_factor = CovarianceFactor::exponential_decay(d, decay);
  const SymMatrix sigma = spec.sigma_factor->covariance();
  const Spectrum pop = spec.sigma_factor->population_spectrum();

  const auto errors = parallel_map<double>(static_cast<std::size_t>(trials), workers, [&](std::size_t k) {
    const DataMatrix x = sample_X(spec, n, derive_seed(seed, k, spec.seed_stream));
    const SymMatrix diff(Eigen::MatrixXd(empirical_second_moment(x).matrix() - sigma.matrix()));
    return spectral_norm(diff);
  });

  UniformRelativeReport r;
  r.n = n;
  r.d = d;
  r.decay = decay;
  r.trials = trials;
  r.t = t;
  r.mean_spectral_error = std::accumulate(errors.begin(), errors.end(), 0.0) / trials;
  const auto relative = interval_gaussian(pop, static_cast<int>(n), static_cast<int>(d), t);
  for (std::size_t i = 1; i <= pop.size(); ++i) {
    UniformRelativeRow row;
    row.index = static_cast<int>(i);
    row.sigma_eig = pop.lambda(i);
    row.uniform_lower = row.sigma_eig - r.mean_spectral_error;
    row.uniform_upper = row.sigma_eig + r.mean_spectral_error;
    row.relative_lower = relative[i - 1].lower;
    row.relative_upper = relative[i - 1].upper;
    row.flagged = row.uniform_lower <= 0.0 && row.relative_lower > 0.0;
    r.rows.push_back(row);
  }
  for (auto it = r.rows.rbegin(); it != r.rows.rend() && it->flagged; ++it) r.threshold_index = it->index;
  return r;
}

CalibrationResult calibrate_constant(const CalibrationConfig& cfg) {
  if (is_deterministic(cfg.theorem) || cfg.theorem == TheoremTag::IsotropicRowsExpectation ||
      !has_interval_constant(cfg.theorem)) {
    throw Error(ErrorKind::NotCalibratable,
                std::string(to_string(cfg.theorem)) + " has no free constant in its per-trial interval");
  }
  if (!(cfg.target_coverage > 0.0 && cfg.target_coverage < 1.0)) {
    throw Error(ErrorKind::InvalidInput, "target coverage must lie in (0, 1)");
  }
  if (cfg.grid.empty()) throw Error(ErrorKind::InvalidInput, "calibration grid is empty");
  if (cfg.trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
  cfg.base.validate();

  struct PointData {
    CalibrationPoint point;
    DistributionSpec spec;
    Spectrum pop;
    std::vector<Spectrum> fit;
    std::vector<Spectrum> holdout;
  };
  std::vector<PointData> points;
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    const auto& pt = cfg.grid[g];
    PointData p{pt, with_dimension(cfg.spec, pt.d), {}, {}, {}};
    p.spec.validate();
    p.pop = population_spectrum(p.spec, std::nullopt);
    BoundInputs in = cfg.inputs;
    in.t = cfg.t;
    intervals_for(cfg.theorem, p.pop, p.spec, pt.n, in, cfg.base);  // applicability
    p.fit = sample_spectra(p.spec, p.spec.sigma_factor, pt.n, cfg.trials,
                           derive_seed(cfg.seed, g, "calibration"), cfg.workers);
    p.holdout = sample_spectra(p.spec, p.spec.sigma_factor, pt.n, cfg.trials,
                               derive_seed(cfg.holdout_seed, g, "calibration"), cfg.workers);
    points.push_back(std::move(p));
  }

  auto failures_at = [&](const PointData& p, const std::vector<Spectrum>& spectra, double value) {
    ConstantsConfig c = cfg.base;
    *interval_constant(c, cfg.theorem) = value;
    BoundInputs in = cfg.inputs;
    in.t = cfg.t;
    const auto intervals = intervals_for(cfg.theorem, p.pop, p.spec, p.point.n, in, c);
    int bad = 0;
    for (const auto& emp : spectra) {
      if (!violating_indices(intervals, emp).empty()) ++bad;
    }
    return bad;
  };
  auto meets = [&](double value) {
    for (const auto& p : points) {
      const double coverage = 1.0 - static_cast<double>(failures_at(p, p.fit, value)) / cfg.trials;
      if (coverage < cfg.target_coverage) return false;
    }
    return true;
  };

  double lo = 0.0;
  double hi = 1.0;
  if (meets(hi)) {
    while (hi > 1e-12 && meets(hi / 2.0)) hi /= 2.0;
    lo = hi / 2.0;
  } else {
    lo = hi;
    while (!meets(hi)) {
      lo = hi;
      hi *= 2.0;
      if (hi > cfg.max_constant) {
        if (meets(cfg.max_constant)) {
          hi = cfg.max_constant;
          break;
        }
        throw Error(ErrorKind::CalibrationFailed, "coverage target unreachable with constant <= " +
                                                      std::to_string(cfg.max_constant));
      }
    }
  }
  while (hi - lo > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (meets(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  CalibrationResult result;
  result.theorem = cfg.theorem;
  result.value = hi;
  result.constants = cfg.base;
  *interval_constant(result.constants, cfg.theorem) = hi;
  result.holdout_meets_target = true;
  for (const auto& p : points) {
    CalibrationEvidence e;
    e.n = p.point.n;
    e.d = p.point.d;
    e.coverage = 1.0 - static_cast<double>(failures_at(p, p.fit, hi)) / cfg.trials;
    const int held = failures_at(p, p.holdout, hi);
    e.holdout_coverage = 1.0 - static_cast<double>(held) / cfg.trials;
    e.holdout_wilson = wilson_halfwidth(held, cfg.trials);
    if (e.holdout_coverage < cfg.target_coverage - e.holdout_wilson) result.holdout_meets_target = false;
    result.evidence.push_back(e);
  }
  return result;
}

}  // namespace spectra
