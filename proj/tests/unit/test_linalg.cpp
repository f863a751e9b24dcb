#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "spectra/error.hpp"
#include "spectra/linalg.hpp"
#include "spectra/rng.hpp"

using namespace spectra;

namespace {

Eigen::MatrixXd random_matrix(Index rows, Index cols, SplitMix64& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = standard_normal(rng);
  }
  return m;
}

SymMatrix random_symmetric(Index d, SplitMix64& rng) { return SymMatrix(random_matrix(d, d, rng)); }

DataMatrix to_data(const Eigen::MatrixXd& m) { return DataMatrix(RowMatrix(m)); }

void expect_spectrum(const Spectrum& s, std::vector<double> expected, double tol = 1e-12) {
  ASSERT_EQ(s.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(s[i], expected[i], tol) << "index " << i;
}

}  // namespace

TEST(SymMatrix, SymmetrizesExactly) {
  SplitMix64 rng(1);
  const SymMatrix m(random_matrix(7, 7, rng));
  for (Index i = 0; i < 7; ++i) {
    for (Index j = 0; j < 7; ++j) EXPECT_EQ(m(i, j), m(j, i));
  }
}

TEST(SymMatrix, RejectsNonSquareAndEmpty) {
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd(2, 3)), Error);
  EXPECT_THROW(SymMatrix(Eigen::MatrixXd(0, 0)), Error);
}

TEST(Spectrum, SortsDescendingAndIndexesFromOne) {
  const Spectrum s({1.0, 3.0, 2.0, 3.0});
  expect_spectrum(s, {3.0, 3.0, 2.0, 1.0}, 0.0);
  EXPECT_EQ(s.lambda(1), 3.0);
  EXPECT_EQ(s.lambda(4), 1.0);
  try {
    (void)s.lambda(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexError);
  }
  EXPECT_THROW((void)s.lambda(0), Error);
}

TEST(Eigenvalues, Identity) { expect_spectrum(sym_eigvals_desc(SymMatrix::identity(3)), {1, 1, 1}); }

TEST(Eigenvalues, DiagonalReordered) {
  const std::vector<double> diag{3, 1, 2};
  expect_spectrum(sym_eigvals_desc(SymMatrix::diagonal(diag)), {3, 2, 1});
}

TEST(Eigenvalues, MatchesBisectionOracle) {
  SplitMix64 rng(42);
  for (int rep = 0; rep < 20; ++rep) {
    const SymMatrix m = random_symmetric(4, rng);
    const auto expected = oracle::eigenvalues_bisection(m.matrix());
    expect_spectrum(sym_eigvals_desc(m), expected, 1e-8);
  }
}

TEST(Eigenvalues, MatchesBisectionOracleLarger) {
  SplitMix64 rng(43);
  const SymMatrix m = random_symmetric(30, rng);
  expect_spectrum(sym_eigvals_desc(m), oracle::eigenvalues_bisection(m.matrix()), 1e-8);
}

TEST(Eigenvalues, NonFiniteIsInvalidInput) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)sym_eigvals_desc(SymMatrix(a));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidInput);
  }
}

TEST(PsdEigenvalues, ClampsTinyNegativesAndRejectsLargeOnes) {
  const std::vector<double> tiny{1.0, -1e-12};
  expect_spectrum(psd_eigvals_desc(SymMatrix::diagonal(tiny)), {1.0, 0.0}, 0.0);
  const std::vector<double> neg{1.0, -1e-3};
  try {
    (void)psd_eigvals_desc(SymMatrix::diagonal(neg));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPSD);
  }
}

TEST(PsdSqrt, Identity) {
  EXPECT_LE((psd_sqrt(SymMatrix::identity(4)).matrix() - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-14);
}

TEST(PsdSqrt, Diagonal) {
  const std::vector<double> diag{4, 9};
  const SymMatrix s = psd_sqrt(SymMatrix::diagonal(diag));
  EXPECT_NEAR(s(0, 0), 2.0, 1e-14);
  EXPECT_NEAR(s(1, 1), 3.0, 1e-14);
  EXPECT_NEAR(s(0, 1), 0.0, 1e-14);
}

TEST(PsdSqrt, ReconstructsRandomPsd) {
  SplitMix64 rng(7);
  for (Index d : {5, 20, 200}) {
    const Eigen::MatrixXd b = random_matrix(d, d, rng);
    const SymMatrix a(Eigen::MatrixXd(b.transpose() * b));
    const SymMatrix s = psd_sqrt(a);
    const SymMatrix err(Eigen::MatrixXd(s.matrix() * s.matrix() - a.matrix()));
    EXPECT_LE(spectral_norm(err), 1e-8 * std::max(1.0, spectral_norm(a))) << "d = " << d;
  }
}

TEST(PsdSqrt, RankDeficientIsFine) {
  SplitMix64 rng(8);
  const Eigen::MatrixXd b = random_matrix(6, 2, rng);
  const SymMatrix a(Eigen::MatrixXd(b * b.transpose()));
  const SymMatrix s = psd_sqrt(a);
  EXPECT_LE((s.matrix() * s.matrix() - a.matrix()).norm(), 1e-8 * std::max(1.0, spectral_norm(a)));
}

TEST(PsdSqrt, NegativeEigenvalueIsNotPsd) {
  const std::vector<double> diag{1.0, -0.5};
  try {
    (void)psd_sqrt(SymMatrix::diagonal(diag));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotPSD);
  }
}

TEST(PsdInvSqrt, IdentityAndDiagonal) {
  EXPECT_LE((psd_inv_sqrt(SymMatrix::identity(3)).matrix() - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-14);
  const std::vector<double> diag{4, 25};
  const SymMatrix t = psd_inv_sqrt(SymMatrix::diagonal(diag));
  EXPECT_NEAR(t(0, 0), 0.5, 1e-14);
  EXPECT_NEAR(t(1, 1), 0.2, 1e-14);
}

TEST(PsdInvSqrt, SingularIsRejected) {
  const std::vector<double> diag{1.0, 0.0};
  try {
    (void)psd_inv_sqrt(SymMatrix::diagonal(diag));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(PsdInvSqrt, WhitensRandomSpd) {
  SplitMix64 rng(9);
  const Eigen::MatrixXd b = random_matrix(6, 6, rng);
  const SymMatrix sigma(Eigen::MatrixXd(b.transpose() * b + 0.5 * Eigen::MatrixXd::Identity(6, 6)));
  const SymMatrix t = psd_inv_sqrt(sigma);
  const Eigen::MatrixXd w = t.matrix() * sigma.matrix() * t.matrix();
  const double cond = spectral_norm(sigma) / sym_eigvals_desc(sigma).min();
  EXPECT_LE((w - Eigen::MatrixXd::Identity(6, 6)).norm(), 1e-8 * cond);

  // Gaussian samples with covariance Sigma, whitened with T: unit diagonal
  // up to Monte-Carlo error.
  const SymMatrix root = psd_sqrt(sigma);
  const Index n = 20000;
  const DataMatrix z = to_data(random_matrix(n, 6, rng));
  const DataMatrix x = right_multiply(z, root);
  const DataMatrix white = right_multiply(x, t);
  const SymMatrix m = empirical_second_moment(white);
  for (Index i = 0; i < 6; ++i) EXPECT_NEAR(m(i, i), 1.0, 0.05);
}

TEST(PsdInvSqrt, WhitenedEmpiricalMomentIsIdentity) {
  SplitMix64 rng(10);
  for (Index d : {3, 10, 25}) {
    const DataMatrix x = to_data(random_matrix(4 * d, d, rng));
    const SymMatrix s = empirical_second_moment(x);
    const SymMatrix t = psd_inv_sqrt(s);
    const Spectrum e = sym_eigvals_desc(congruence(t, s));
    for (double v : e.values()) EXPECT_NEAR(v, 1.0, 1e-8);
  }
}

TEST(SecondMoment, IdentityRows) {
  const DataMatrix x = to_data(Eigen::MatrixXd::Identity(2, 2));
  const SymMatrix m = empirical_second_moment(x);
  EXPECT_EQ(m(0, 0), 0.5);
  EXPECT_EQ(m(1, 1), 0.5);
  EXPECT_EQ(m(0, 1), 0.0);
}

TEST(SecondMoment, RankOneOuterProduct) {
  Eigen::MatrixXd row(1, 2);
  row << 1, 2;
  const SymMatrix m = empirical_second_moment(to_data(row));
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m(0, 1), 2.0);
  EXPECT_EQ(m(1, 0), 2.0);
  EXPECT_EQ(m(1, 1), 4.0);
}

TEST(SecondMoment, MatchesNaiveLoop) {
  SplitMix64 rng(11);
  const Eigen::MatrixXd x = random_matrix(50, 3, rng);
  const SymMatrix m = empirical_second_moment(to_data(x));
  const Eigen::MatrixXd expected = oracle::naive_second_moment(x);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) EXPECT_NEAR(m(i, j), expected(i, j), 1e-12);
  }
}

TEST(Gram, IdentityAndZero) {
  const SymMatrix g = gram(to_data(Eigen::MatrixXd::Identity(3, 3)));
  EXPECT_EQ((g.matrix() - Eigen::MatrixXd::Identity(3, 3)).norm(), 0.0);
  const SymMatrix z = gram(to_data(Eigen::MatrixXd::Zero(2, 4)));
  EXPECT_EQ(z.matrix().norm(), 0.0);
}

TEST(Gram, DualSpectraAgree) {
  SplitMix64 rng(12);
  for (auto [n, d] : {std::pair<Index, Index>{2, 5}, {5, 2}, {7, 7}, {3, 40}}) {
    const Eigen::MatrixXd x = random_matrix(n, d, rng);
    const DataMatrix data = to_data(x);
    const Spectrum big = sym_eigvals_desc(empirical_second_moment(data).scaled(static_cast<double>(n)));
    const Spectrum small = sym_eigvals_desc(gram(data));
    const double norm2 = std::max(big.max(), small.max());
    for (std::size_t i = 1; i <= static_cast<std::size_t>(std::min(n, d)); ++i) {
      EXPECT_NEAR(big.lambda(i), small.lambda(i), 1e-8 * std::max(1.0, norm2));
    }
  }
}

TEST(EmpiricalSpectrum, UsesTheSmallerSide) {
  SplitMix64 rng(13);
  const DataMatrix wide = to_data(random_matrix(4, 30, rng));
  const Spectrum s = empirical_spectrum(wide);
  ASSERT_EQ(s.size(), 4u);
  const Spectrum full = psd_eigvals_desc(empirical_second_moment(wide));
  for (std::size_t i = 1; i <= 4; ++i) EXPECT_NEAR(s.lambda(i), full.lambda(i), 1e-10 * full.max());
}

TEST(Deviation, Examples) {
  EXPECT_EQ(deviation_from_identity(SymMatrix::identity(4)), 0.0);
  const std::vector<double> diag{1.5, 0.8};
  EXPECT_NEAR(deviation_from_identity(SymMatrix::diagonal(diag)), 0.5, 1e-14);
}

TEST(Deviation, MatchesEigenOracle) {
  SplitMix64 rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    const SymMatrix m = random_symmetric(6, rng);
    double expected = 0.0;
    for (double v : oracle::eigenvalues_bisection(m.matrix())) expected = std::max(expected, std::abs(v - 1.0));
    EXPECT_NEAR(deviation_from_identity(m), expected, 1e-8);
  }
}

TEST(Weyl, Examples) {
  const Interval a = weyl_sandwich(0.0);
  EXPECT_EQ(a.lo, 1.0);
  EXPECT_EQ(a.hi, 1.0);
  const Interval b = weyl_sandwich(0.3);
  EXPECT_NEAR(b.lo, 0.7, 1e-15);
  EXPECT_NEAR(b.hi, 1.3, 1e-15);
  EXPECT_THROW(weyl_sandwich(-0.1), Error);
}

TEST(Weyl, ContainsEveryEigenvalue) {
  SplitMix64 rng(15);
  for (int rep = 0; rep < 200; ++rep) {
    const SymMatrix m = random_symmetric(8, rng);
    const Interval iv = weyl_sandwich(deviation_from_identity(m));
    const Spectrum eigs = sym_eigvals_desc(m);
    for (double v : eigs.values()) {
      EXPECT_GE(v, iv.lo - 1e-12);
      EXPECT_LE(v, iv.hi + 1e-12);
    }
  }
}
