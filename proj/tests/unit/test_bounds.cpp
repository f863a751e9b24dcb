#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spectra/bounds.hpp"
#include "spectra/error.hpp"

using namespace spectra;

namespace {

constexpr double kRel = 1e-12;

void expect_rel(double actual, double expected, const std::string& what) {
  const double scale = std::max(1e-300, std::abs(expected));
  EXPECT_LE(std::abs(actual - expected) / scale, kRel) << what << ": " << actual << " vs " << expected;
}

int as_int(const nlohmann::json& j, const char* key) { return static_cast<int>(j.at(key).get<double>()); }
double num(const nlohmann::json& j, const char* key) { return j.at(key).get<double>(); }

Spectrum flat(int d, double v = 1.0) { return Spectrum(std::vector<double>(static_cast<std::size_t>(d), v)); }

void expect_kind(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

void expect_well_formed(const std::vector<BoundInterval>& iv) {
  for (const auto& b : iv) {
    EXPECT_LE(b.lower, b.upper);
    EXPECT_GE(b.lower, 0.0);
    if (!b.is_expectation()) {
      EXPECT_GE(b.failure_prob, 0.0);
      EXPECT_LE(b.failure_prob, 1.0);
    }
  }
}

}  // namespace

TEST(FormulaOracle, CasesArePresent) {
  for (const char* name : {"lowdim_subgaussian", "gaussian", "bounded_norm", "highdim_subgaussian", "highdim_rows",
                           "moment_budget", "square", "bai_yin"}) {
    EXPECT_FALSE(oracle::formula_cases(name).empty()) << name;
  }
}

TEST(FormulaOracle, LowDimSubgaussian) {
  for (const auto& c : oracle::formula_cases("lowdim_subgaussian")) {
    ConstantsConfig cfg;
    cfg.subgaussian_C = num(c, "C");
    const auto r = eps_lowdim_subgaussian(as_int(c, "n"), as_int(c, "d"), num(c, "t"), num(c, "K"), cfg);
    expect_rel(r.epsilon, num(c, "epsilon"), "epsilon");
    expect_rel(r.factor, num(c, "factor"), "factor");
    expect_rel(r.failure_prob, num(c, "failure"), "failure");
  }
}

TEST(FormulaOracle, Gaussian) {
  for (const auto& c : oracle::formula_cases("gaussian")) {
    const auto r = eps_gaussian(as_int(c, "n"), as_int(c, "d"), num(c, "t"));
    expect_rel(r.epsilon, num(c, "epsilon"), "epsilon");
    expect_rel(r.factor, num(c, "factor"), "factor");
    expect_rel(r.failure_prob, num(c, "failure"), "failure");
  }
  for (const auto& c : oracle::formula_cases("gaussian_t_for_failure")) {
    expect_rel(gaussian_t_for_failure(num(c, "delta")), num(c, "t"), "t");
  }
}

TEST(FormulaOracle, BoundedNorm) {
  for (const auto& c : oracle::formula_cases("bounded_norm")) {
    ConstantsConfig cfg;
    cfg.bounded_norm_c = num(c, "c");
    const auto r = eps_bounded_norm(as_int(c, "n"), as_int(c, "d"), num(c, "m"), num(c, "t"), cfg);
    expect_rel(r.epsilon + 1.0, num(c, "epsilon") + 1.0, "epsilon");
    expect_rel(r.factor + 1.0, num(c, "factor") + 1.0, "factor");
    expect_rel(r.failure_prob, num(c, "failure"), "failure");
  }
  for (const auto& c : oracle::formula_cases("bounded_norm_t_for_failure")) {
    ConstantsConfig cfg;
    cfg.bounded_norm_c = num(c, "c");
    expect_rel(bounded_norm_t_for_failure(as_int(c, "d"), num(c, "delta"), cfg), num(c, "t"), "t");
  }
}

TEST(FormulaOracle, HighDimSubgaussian) {
  for (const auto& c : oracle::formula_cases("highdim_subgaussian")) {
    ConstantsConfig cfg;
    cfg.entries_highdim_C = num(c, "C");
    const auto r = eps_highdim_subgaussian(as_int(c, "n"), as_int(c, "d"), num(c, "t"), num(c, "K"), cfg);
    expect_rel(r.epsilon, num(c, "epsilon"), "epsilon");
    expect_rel(r.factor, num(c, "factor"), "factor");
    expect_rel(r.failure_prob, num(c, "failure"), "failure");
  }
}

TEST(FormulaOracle, HighDimRows) {
  for (const auto& c : oracle::formula_cases("highdim_rows")) {
    ConstantsConfig cfg;
    cfg.rows_highdim_C_K = num(c, "C_K");
    cfg.rows_highdim_c_K = num(c, "c_K");
    IndependentRowsParams params;
    params.t = num(c, "t");
    const auto r = eps_highdim_independent(as_int(c, "n"), as_int(c, "d"), params, cfg);
    expect_rel(r.epsilon, num(c, "epsilon"), "epsilon");
    expect_rel(r.factor, num(c, "factor"), "factor");
    expect_rel(r.failure_prob, num(c, "failure"), "failure");
  }
}

TEST(FormulaOracle, MomentBudget) {
  for (const auto& c : oracle::formula_cases("moment_budget")) {
    ConstantsConfig cfg;
    cfg.rosenthal_C = num(c, "C");
    const int n = as_int(c, "n");
    const int p = as_int(c, "p");
    expect_rel(moment_budget(n, p, num(c, "K2p"), cfg), num(c, "budget"), "budget");
    IndependentRowsParams params;
    params.mode = IndependentRowsMode::Expectation;
    params.p = p;
    params.K2p = num(c, "K2p");
    const auto r = eps_highdim_independent(n, as_int(c, "d"), params, cfg);
    expect_rel(r.epsilon, num(c, "epsilon"), "epsilon");
  }
}

TEST(FormulaOracle, NearlySquare) {
  for (const auto& c : oracle::formula_cases("square")) {
    ConstantsConfig cfg;
    cfg.square_C_K = num(c, "C_K");
    cfg.square_c_K = num(c, "c_K");
    cfg.square_C_tilde = num(c, "C_tilde");
    const int n = as_int(c, "n");
    const int d = as_int(c, "d");
    const auto r = square_factors(n, d, num(c, "t1"), num(c, "t2"), num(c, "K"), cfg);
    const std::string tag = "n=" + std::to_string(n) + " d=" + std::to_string(d);
    expect_rel(r.epsilon1 + 1.0, num(c, "epsilon1") + 1.0, tag + " epsilon1");
    expect_rel(r.epsilon2, num(c, "epsilon2"), tag + " epsilon2");
    expect_rel(r.lower_factor, num(c, "lower_factor"), tag + " lower");
    expect_rel(r.upper_factor, num(c, "upper_factor"), tag + " upper");
    expect_rel(r.failure_prob, num(c, "failure"), tag + " failure");
  }
}

TEST(FormulaOracle, BaiYin) {
  for (const auto& c : oracle::formula_cases("bai_yin")) {
    const auto r = bai_yin_range(num(c, "gamma"));
    expect_rel(r.lo, num(c, "lo"), "lo");
    expect_rel(r.hi, num(c, "hi"), "hi");
  }
}

TEST(LowDimSubgaussian, Examples) {
  const ConstantsConfig cfg;
  const auto boundary = eps_lowdim_subgaussian(50, 50, 0.0, 1.3, cfg);
  EXPECT_DOUBLE_EQ(boundary.epsilon, 1.0);
  EXPECT_DOUBLE_EQ(boundary.factor, 1.3 * 1.3);
  const auto r = eps_lowdim_subgaussian(10000, 100, 2.0, 1.0, cfg);
  EXPECT_NEAR(r.epsilon, 0.12, 1e-15);
  EXPECT_NEAR(r.failure_prob, 2.0 * std::exp(-4.0), 1e-15);
  // Quadrupling n with t proportional to sqrt(d) halves epsilon.
  const auto a = eps_lowdim_subgaussian(1000, 40, std::sqrt(40.0), 1.0, cfg);
  const auto b = eps_lowdim_subgaussian(4000, 40, std::sqrt(40.0), 1.0, cfg);
  EXPECT_NEAR(b.epsilon, a.epsilon / 2.0, 1e-15);
}

TEST(LowDimSubgaussian, Errors) {
  const ConstantsConfig cfg;
  expect_kind(ErrorKind::RegimeError, [&] { (void)eps_lowdim_subgaussian(10, 11, 1.0, 1.0, cfg); });
  expect_kind(ErrorKind::InvalidInput, [&] { (void)eps_lowdim_subgaussian(10, 5, -1.0, 1.0, cfg); });
  expect_kind(ErrorKind::InvalidInput, [&] { (void)eps_lowdim_subgaussian(10, 5, 1.0, 0.0, cfg); });
}

TEST(Gaussian, Examples) {
  EXPECT_LT(eps_gaussian(100000000, 1, 0.0).factor, 1e-3);
  const auto r = eps_gaussian(10000, 100, 2.7157);
  EXPECT_NEAR(r.epsilon, 0.1271570, 1e-12);
  EXPECT_NEAR(r.factor, 0.2704829, 1e-7);
  EXPECT_NEAR(r.failure_prob, 0.05, 1e-4);
  const auto iv = interval_gaussian(Spectrum({1.0}), 400, 1, 1.0);
  ASSERT_EQ(iv.size(), 1u);
  EXPECT_NEAR(iv[0].lower, 0.79, 1e-14);
  EXPECT_NEAR(iv[0].upper, 1.21, 1e-14);
  EXPECT_EQ(iv[0].theorem, TheoremTag::GaussianLowDim);
  expect_kind(ErrorKind::RegimeError, [] { (void)interval_gaussian(flat(5), 4, 5, 1.0); });
}

TEST(Gaussian, FactorIdentityOnMillionRandomTriples) {
  std::mt19937_64 gen(20240601);
  std::uniform_int_distribution<int> nd(1, 1000000);
  std::uniform_real_distribution<double> tt(0.0, 10.0);
  int bad = 0;
  for (int k = 0; k < 1000000; ++k) {
    int n = nd(gen);
    int d = nd(gen);
    if (d > n) std::swap(d, n);
    const double t = tt(gen);
    const long double eps = std::sqrt(static_cast<long double>(d) / n) + t / std::sqrt(static_cast<long double>(n));
    const long double factor = 2.0L * eps + eps * eps;
    const auto r = eps_gaussian(n, d, t);
    if (std::abs(static_cast<long double>(r.factor) - factor) > 1e-12L * factor) ++bad;
  }
  EXPECT_EQ(bad, 0);
}

TEST(Gaussian, FailureInversion) {
  for (double delta : {0.5, 0.1, 0.05, 0.01, 1e-6}) {
    EXPECT_NEAR(eps_gaussian(1000, 10, gaussian_t_for_failure(delta)).failure_prob, delta, 1e-14);
  }
  EXPECT_THROW((void)gaussian_t_for_failure(0.0), Error);
}

TEST(BoundedNorm, Examples) {
  const ConstantsConfig cfg;
  const auto zero = eps_bounded_norm(100, 10, 10, 0.0, cfg);
  EXPECT_EQ(zero.factor, 0.0);
  EXPECT_EQ(zero.failure_prob, 1.0);
  EXPECT_TRUE(zero.vacuous);
  EXPECT_NEAR(eps_bounded_norm(10000, 100, 100, 3.0, cfg).epsilon, 0.3, 1e-15);
  const double t = bounded_norm_t_for_failure(50, 0.05, cfg);
  EXPECT_NEAR(eps_bounded_norm(1000, 50, 50, t, cfg).failure_prob, 0.05, 1e-14);
  expect_kind(ErrorKind::InvalidInput, [&] { (void)eps_bounded_norm(100, 10, 9.5, 1.0, cfg); });
}

TEST(HighDimSubgaussian, IsotropicIntervals) {
  const ConstantsConfig cfg;
  const auto r = eps_highdim_subgaussian(100, 10000, 2.0, 1.0, cfg);
  EXPECT_NEAR(r.epsilon, 0.12, 1e-15);
  const auto iv = interval_highdim_subgaussian(flat(10000), 100, 10000, 2.0, 1.0, cfg);
  ASSERT_EQ(iv.size(), 100u);
  for (const auto& b : iv) {
    EXPECT_NEAR(b.lower, 100.0 * (1 - r.factor), 1e-12);
    EXPECT_NEAR(b.upper, 100.0 * (1 + r.factor), 1e-12);
  }
  expect_kind(ErrorKind::RegimeError, [&] { (void)eps_highdim_subgaussian(11, 10, 1.0, 1.0, cfg); });
}

TEST(HighDimSubgaussian, LastIndexUsesSmallestEigenvalue) {
  const ConstantsConfig cfg;
  const Spectrum eigs({9, 7, 5, 3, 1});
  const auto iv = interval_highdim_subgaussian(eigs, 2, 5, 0.0, 0.1, cfg);
  const double f = eps_highdim_subgaussian(2, 5, 0.0, 0.1, cfg).factor;
  EXPECT_NEAR(iv[1].lower, 2.5 * 1.0 * (1 - f), 1e-14);
  EXPECT_NEAR(iv[0].lower, 2.5 * 3.0 * (1 - f), 1e-14);
  EXPECT_NEAR(iv[1].upper, 2.5 * 7.0 * (1 + f), 1e-14);
}

TEST(IndependentRows, ExpectationModeWithPEqualOne) {
  ConstantsConfig cfg;
  for (double k2 : {0.5, 1.0, 2.0}) {
    const int n = 37;
    const double expected = n * std::log(static_cast<double>(n)) * n * std::max(1.0, k2 * k2) / std::log(2.0);
    EXPECT_NEAR(moment_budget(n, 1, k2, cfg) / expected, 1.0, 1e-13);
  }
}

TEST(IndependentRows, BudgetMonotone) {
  const ConstantsConfig cfg;
  for (int p : {1, 2, 3, 5}) {
    double prev = 0.0;
    for (double k : {0.5, 1.0, 2.0, 5.0, 20.0}) {
      const double b = moment_budget(50, p, k, cfg);
      EXPECT_GE(b, prev);
      prev = b;
    }
    prev = 0.0;
    for (int n : {2, 5, 20, 100, 1000}) {
      const double b = moment_budget(n, p, 1.5, cfg);
      EXPECT_GE(b, prev);
      prev = b;
    }
  }
}

TEST(IndependentRows, ExpectationIntervalsAreTyped) {
  const ConstantsConfig cfg;
  IndependentRowsParams params;
  params.mode = IndependentRowsMode::Expectation;
  params.p = 2;
  params.K2p = std::sqrt(3.0);
  const auto iv = interval_highdim_independent(flat(1000000), 100, 1000000, params, cfg);
  ASSERT_EQ(iv.size(), 100u);
  EXPECT_TRUE(iv[0].is_expectation());
  EXPECT_TRUE(std::isnan(iv[0].failure_prob));
  EXPECT_EQ(iv[0].theorem, TheoremTag::IsotropicRowsExpectation);
  params.p = 0;
  expect_kind(ErrorKind::SpecError, [&] { (void)eps_highdim_independent(100, 1000, params, cfg); });
  params.p = 2;
  params.K2p = 0.0;
  expect_kind(ErrorKind::SpecError, [&] { (void)eps_highdim_independent(100, 1000, params, cfg); });
  IndependentRowsParams hp;
  hp.t = 1.0;
  expect_kind(ErrorKind::SpecError, [&] { (void)eps_highdim_independent(100, 99, hp, cfg); });
}

TEST(NearlySquare, SquareExamples) {
  const ConstantsConfig cfg;
  const auto r = square_factors(100, 100, 2.0, 1.0, 1.0, cfg);
  const double e1 = std::sqrt(99.0 / 100.0);
  EXPECT_NEAR(r.lower_factor, 0.25 * (1 - e1) * (1 - e1), 1e-16);
  EXPECT_GT(r.lower_factor, 0.0);
  const auto scalar = square_factors(100000, 1, 2.0, 1.0, 1.0, cfg);
  EXPECT_DOUBLE_EQ(scalar.lower_factor, 0.25);
  expect_kind(ErrorKind::InvalidInput, [&] { (void)square_factors(10, 10, 0.0, 1.0, 1.0, cfg); });
  expect_kind(ErrorKind::InvalidInput, [&] { (void)square_factors(10, 10, 1.0, -1.0, 1.0, cfg); });
}

TEST(NearlySquare, BranchesCoincideWhenSquare) {
  ConstantsConfig cfg;
  cfg.square_C_K = 0.7;
  cfg.square_c_K = 0.2;
  cfg.square_C_tilde = 1.4;
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(gen() % 300);
    const double t1 = 0.5 + (gen() % 1000) / 100.0;
    const double t2 = (gen() % 1000) / 200.0;
    const double K = 0.5 + (gen() % 100) / 50.0;
    const auto tall = square_factors_tall(n, n, t1, t2, K, cfg);
    const auto wide = square_factors_wide(n, n, t1, t2, K, cfg);
    EXPECT_EQ(tall.lower_factor, wide.lower_factor);
    EXPECT_EQ(tall.upper_factor, wide.upper_factor);
    EXPECT_EQ(tall.failure_prob, wide.failure_prob);

    std::vector<double> e(static_cast<std::size_t>(n));
    for (auto& v : e) v = 0.01 + (gen() % 10000) / 100.0;
    const Spectrum eigs(e);
    const auto a = interval_square(eigs, n, n, t1, t2, K, cfg, SquareBranch::Tall);
    const auto b = interval_square(eigs, n, n, t1, t2, K, cfg, SquareBranch::Wide);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].lower, b[i].lower);
      EXPECT_EQ(a[i].upper, b[i].upper);
    }
  }
}

TEST(NearlySquare, BranchRegimes) {
  const ConstantsConfig cfg;
  expect_kind(ErrorKind::RegimeError,
              [&] { (void)interval_square(flat(20), 10, 20, 2.0, 1.0, 1.0, cfg, SquareBranch::Tall); });
  expect_kind(ErrorKind::RegimeError,
              [&] { (void)interval_square(flat(10), 20, 10, 2.0, 1.0, 1.0, cfg, SquareBranch::Wide); });
  const auto wide = interval_square(flat(20), 10, 20, 2.0, 1.0, 1.0, cfg);
  ASSERT_EQ(wide.size(), 10u);
  const auto f = square_factors(10, 20, 2.0, 1.0, 1.0, cfg);
  EXPECT_NEAR(wide[0].upper, 2.0 * f.upper_factor, 1e-14);
  EXPECT_NEAR(wide[0].lower, 2.0 * f.lower_factor, 1e-14);
}

TEST(BaiYin, Examples) {
  const auto q = bai_yin_range(0.25);
  EXPECT_NEAR(q.lo, 0.25, 1e-15);
  EXPECT_NEAR(q.hi, 2.25, 1e-15);
  const auto h = bai_yin_range(0.5);
  EXPECT_NEAR(h.lo, 0.0858, 1e-4);
  EXPECT_NEAR(h.hi, 2.9142, 1e-4);
  const auto tiny = bai_yin_range(1e-12);
  EXPECT_NEAR(tiny.lo, 1.0, 1e-5);
  EXPECT_NEAR(tiny.hi, 1.0, 1e-5);
  for (double g : {0.0, 1.0, -0.5, 2.0}) {
    expect_kind(ErrorKind::InvalidInput, [&] { (void)bai_yin_range(g); });
  }
}

TEST(SelectTheorem, Routing) {
  DistributionSpec g;
  g.family = Family::GaussianSigma;
  g.d = 10;
  g.sigma_factor = CovarianceFactor::diagonal(std::vector<double>(10, 1.0));
  EXPECT_EQ(select_theorem(g, 1000, 10), std::vector<TheoremTag>{TheoremTag::GaussianLowDim});

  DistributionSpec s;
  s.family = Family::SphereIsotropic;
  s.d = 4096;
  EXPECT_EQ(select_theorem(s, 64, 4096), std::vector<TheoremTag>{TheoremTag::IsotropicRowsHighDim});

  DistributionSpec r;
  r.family = Family::SubgaussianEntries;
  r.entry_law = EntryLaw::Rademacher;
  r.d = 256;
  const auto tags = select_theorem(r, 256, 256);
  ASSERT_EQ(tags.size(), 2u);
  EXPECT_TRUE(tags[0] == TheoremTag::SubgaussianLowDim || tags[0] == TheoremTag::SubgaussianEntriesHighDim);
  EXPECT_EQ(tags[1], TheoremTag::NearlySquare);
  EXPECT_EQ(select_theorem(r, 1000, 256), std::vector<TheoremTag>{TheoremTag::SubgaussianLowDim});
  EXPECT_EQ(select_theorem(r, 100, 256), std::vector<TheoremTag>{TheoremTag::SubgaussianEntriesHighDim});

  DistributionSpec b;
  b.family = Family::BoundedNormCustom;
  b.d = 5;
  EXPECT_EQ(select_theorem(b, 100, 5), std::vector<TheoremTag>{TheoremTag::BoundedNormLowDim});
  expect_kind(ErrorKind::Unsupported, [&] { (void)select_theorem(b, 3, 5); });
}

TEST(Intervals, WellFormedAcrossInputs) {
  ConstantsConfig cfg;
  IndependentRowsParams hp;
  for (double t : {0.0, 0.5, 2.0, 10.0}) {
    const Spectrum eigs({5, 2, 1, 0.5});
    expect_well_formed(interval_lowdim_subgaussian(eigs, 8, 4, t, 1.0, cfg));
    expect_well_formed(interval_gaussian(eigs, 8, 4, t));
    expect_well_formed(interval_bounded_norm(eigs, 8, 4, 4.0, t, cfg));
    expect_well_formed(interval_highdim_subgaussian(eigs, 2, 4, t, 1.0, cfg));
    hp.t = t;
    expect_well_formed(interval_highdim_independent(eigs, 2, 4, hp, cfg));
    expect_well_formed(interval_square(eigs, 4, 4, 1.0 + t, t, 1.0, cfg));
    expect_well_formed(interval_square(eigs, 40, 4, 1.0 + t, t, 1.0, cfg));
  }
  const auto wide = interval_gaussian(Spectrum({1.0}), 2, 1, 5.0);
  EXPECT_TRUE(wide[0].vacuous_lower);
  EXPECT_EQ(wide[0].lower, 0.0);
}

TEST(Epsilon, MonotoneInDimensionAndT) {
  const ConstantsConfig cfg;
  double prev = 1e300;
  for (int n : {10, 20, 50, 100, 1000}) {
    const double e = eps_lowdim_subgaussian(n, 10, 1.0, 1.0, cfg).epsilon;
    EXPECT_LE(e, prev);
    prev = e;
  }
  prev = 1e300;
  for (int d : {10, 20, 50, 100, 1000}) {
    const double e = eps_highdim_subgaussian(10, d, 1.0, 1.0, cfg).epsilon;
    EXPECT_LE(e, prev);
    prev = e;
  }
  prev = -1.0;
  for (double t : {0.0, 0.1, 1.0, 3.0}) {
    const double e = eps_gaussian(100, 10, t).epsilon;
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(Constants, Validation) {
  ConstantsConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.rosenthal_C = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg.rosenthal_C = std::nan("");
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(Constants, InterfaceTable) {
  ConstantsConfig cfg;
  EXPECT_EQ(interval_constant(cfg, TheoremTag::SubgaussianLowDim), &cfg.subgaussian_C);
  EXPECT_EQ(interval_constant(cfg, TheoremTag::GaussianLowDim), nullptr);
  EXPECT_FALSE(has_interval_constant(TheoremTag::GaussianLowDim));
  EXPECT_TRUE(has_interval_constant(TheoremTag::NearlySquare));
}

TEST(WithFailure, Clamps) {
  const auto r = with_failure(0.1, 0.2, 3.0);
  EXPECT_EQ(r.failure_prob, 1.0);
  EXPECT_TRUE(r.vacuous);
  const auto s = with_failure(0.1, 0.2, 0.3);
  EXPECT_EQ(s.failure_prob, 0.3);
  EXPECT_FALSE(s.vacuous);
}

TEST(TheoremNames, RoundTrip) {
  for (TheoremTag tag : all_theorems()) EXPECT_EQ(theorem_from_string(to_string(tag)), tag);
  EXPECT_FALSE(theorem_from_string("thm4").has_value());
}

TEST(EvaluateBound, DispatchMatchesDirectCall) {
  const ConstantsConfig cfg;
  const Spectrum eigs({3, 2, 1});
  BoundInputs in;
  in.t = 1.5;
  const auto a = evaluate_bound(TheoremTag::GaussianLowDim, eigs, 30, 3, in, cfg);
  const auto b = interval_gaussian(eigs, 30, 3, 1.5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].lower, b[i].lower);
    EXPECT_EQ(a[i].upper, b[i].upper);
  }
  expect_kind(ErrorKind::SpecError,
              [&] { (void)evaluate_bound(TheoremTag::DeterministicLowDim, eigs, 30, 3, in, cfg); });
}
