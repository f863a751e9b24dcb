#pragma once
// Dense symmetric linear algebra: eigenvalues, p.s.d. square roots,
// whitening, the empirical second-moment matrix and the Gram matrix.

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace spectra {

using Index = Eigen::Index;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Relative eigenvalue tolerance; the absolute tolerance for a matrix M is
/// kTolEig * max(1, ||M||_2).
inline constexpr double kTolEig = 1e-10;

inline double eig_tolerance(double spectral_norm) {
  return kTolEig * (spectral_norm > 1.0 ? spectral_norm : 1.0);
}

/// Real symmetric matrix. Construction symmetrizes the input as (A + A^T)/2,
/// so entries(i, j) == entries(j, i) holds bit-for-bit.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& a);

  static SymMatrix identity(Index dim);
  static SymMatrix diagonal(std::span<const double> diag);
  /// Row-major entries of a dim x dim matrix.
  static SymMatrix from_row_major(Index dim, std::span<const double> entries);

  Index dim() const noexcept { return m_.rows(); }
  double operator()(Index i, Index j) const { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }

  SymMatrix scaled(double alpha) const;
  bool all_finite() const { return m_.allFinite(); }

 private:
  struct NoSymmetrize {};
  SymMatrix(Eigen::MatrixXd a, NoSymmetrize) : m_(std::move(a)) {}

  Eigen::MatrixXd m_;
};

/// n x d sample matrix; row i is the i-th observation.
class DataMatrix {
 public:
  DataMatrix(Index n, Index d);
  explicit DataMatrix(RowMatrix rows);

  Index n() const noexcept { return rows_.rows(); }
  Index d() const noexcept { return rows_.cols(); }

  std::span<const double> row(Index i) const {
    return {rows_.data() + i * rows_.cols(), static_cast<std::size_t>(rows_.cols())};
  }
  std::span<double> row(Index i) {
    return {rows_.data() + i * rows_.cols(), static_cast<std::size_t>(rows_.cols())};
  }
  double operator()(Index i, Index j) const { return rows_(i, j); }
  double& operator()(Index i, Index j) { return rows_(i, j); }

  const RowMatrix& rows() const noexcept { return rows_; }
  RowMatrix& rows() noexcept { return rows_; }

 private:
  RowMatrix rows_;
};

/// Eigenvalues sorted in descending order (stable on ties).
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t k) const { return values_[k]; }
  /// 1-based accessor matching lambda_1 >= lambda_2 >= ...
  double lambda(std::size_t i) const;
  double max() const { return values_.front(); }
  double min() const { return values_.back(); }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> values_;
};

struct Interval {
  double lo;
  double hi;
};

Spectrum sym_eigvals_desc(const SymMatrix& m);

/// Eigenvalues of a p.s.d. matrix: values in [-tol, 0) are clamped to 0,
/// anything below -tol raises NotPSD.
Spectrum psd_eigvals_desc(const SymMatrix& m);

double spectral_norm(const SymMatrix& m);

SymMatrix psd_sqrt(const SymMatrix& m);
SymMatrix psd_inv_sqrt(const SymMatrix& m);

/// (1/n) X^T X.
SymMatrix empirical_second_moment(const DataMatrix& x);

/// X X^T.
SymMatrix gram(const DataMatrix& x);

/// Leading min(n, d) eigenvalues of (1/n) X^T X, computed from whichever of
/// X^T X and X X^T is smaller. Clamped at 0.
Spectrum empirical_spectrum(const DataMatrix& x);

/// ||M - I||_2.
double deviation_from_identity(const SymMatrix& m);

/// Every eigenvalue of a symmetric A lies in [1 - dev, 1 + dev] when
/// dev = ||A - I||_2.
Interval weyl_sandwich(double dev);

/// Z * S for an n x d sample matrix and a d x d symmetric factor.
DataMatrix right_multiply(const DataMatrix& z, const SymMatrix& s);

/// S * M * S.
SymMatrix congruence(const SymMatrix& s, const SymMatrix& m);

}  // namespace spectra
