#include "spectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "spectra/error.hpp"
#include "spectra/kernels.hpp"

namespace spectra {

namespace {

struct EigenPairs {
  Eigen::VectorXd values;  // ascending, as returned by Eigen
  Eigen::MatrixXd vectors;
};

void require_finite(const SymMatrix& m) {
  if (!m.all_finite()) throw Error(ErrorKind::InvalidInput, "matrix has non-finite entries");
}

EigenPairs eigen_pairs(const SymMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidInput, "symmetric eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues_ascending(const SymMatrix& m) {
  require_finite(m);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::InvalidInput, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Spectrum clamp_psd(Spectrum s) {
  if (s.empty()) return s;
  const double tol = eig_tolerance(std::max(std::abs(s.max()), std::abs(s.min())));
  std::vector<double> v = s.values();
  for (double& x : v) {
    if (x < -tol) {
      throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(x) + " below -tol_eig");
    }
    if (x < 0.0) x = 0.0;
  }
  return Spectrum(std::move(v));
}

}  // namespace

SymMatrix::SymMatrix(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidInput, "symmetric matrix must be square");
  if (a.rows() < 1) throw Error(ErrorKind::InvalidInput, "symmetric matrix needs dim >= 1");
  m_ = 0.5 * (a + a.transpose());
}

SymMatrix SymMatrix::identity(Index dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "identity needs dim >= 1");
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim), NoSymmetrize{});
}

SymMatrix SymMatrix::diagonal(std::span<const double> diag) {
  if (diag.empty()) throw Error(ErrorKind::InvalidInput, "diagonal needs dim >= 1");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Index>(diag.size()),
                                            static_cast<Index>(diag.size()));
  for (std::size_t k = 0; k < diag.size(); ++k) m(static_cast<Index>(k), static_cast<Index>(k)) = diag[k];
  return SymMatrix(std::move(m), NoSymmetrize{});
}

SymMatrix SymMatrix::from_row_major(Index dim, std::span<const double> entries) {
  if (dim < 1 || entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw Error(ErrorKind::InvalidInput, "row-major entries do not match dim x dim");
  }
  Eigen::Map<const RowMatrix> view(entries.data(), dim, dim);
  return SymMatrix(Eigen::MatrixXd(view));
}

SymMatrix SymMatrix::scaled(double alpha) const { return SymMatrix(alpha * m_, NoSymmetrize{}); }

DataMatrix::DataMatrix(Index n, Index d) : DataMatrix(RowMatrix::Zero(n, d)) {}

DataMatrix::DataMatrix(RowMatrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1 || rows_.cols() < 1) {
    throw Error(ErrorKind::InvalidInput, "data matrix needs n >= 1 and d >= 1");
  }
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

double Spectrum::lambda(std::size_t i) const {
  if (i < 1 || i > values_.size()) {
    throw Error(ErrorKind::IndexError, "eigenvalue index " + std::to_string(i) + " outside [1, " +
                                           std::to_string(values_.size()) + "]");
  }
  return values_[i - 1];
}

Spectrum sym_eigvals_desc(const SymMatrix& m) {
  const Eigen::VectorXd asc = eigenvalues_ascending(m);
  return Spectrum(std::vector<double>(asc.data(), asc.data() + asc.size()));
}

Spectrum psd_eigvals_desc(const SymMatrix& m) { return clamp_psd(sym_eigvals_desc(m)); }

double spectral_norm(const SymMatrix& m) {
  const Eigen::VectorXd asc = eigenvalues_ascending(m);
  return std::max(std::abs(asc(0)), std::abs(asc(asc.size() - 1)));
}

SymMatrix psd_sqrt(const SymMatrix& m) {
  EigenPairs ep = eigen_pairs(m);
  const double norm = std::max(std::abs(ep.values(0)), std::abs(ep.values(ep.values.size() - 1)));
  const double tol = eig_tolerance(norm);
  for (Index k = 0; k < ep.values.size(); ++k) {
    double& v = ep.values(k);
    if (v < -tol) throw Error(ErrorKind::NotPSD, "psd_sqrt: eigenvalue " + std::to_string(v));
    v = v < 0.0 ? 0.0 : std::sqrt(v);
  }
  return SymMatrix(ep.vectors * ep.values.asDiagonal() * ep.vectors.transpose());
}

SymMatrix psd_inv_sqrt(const SymMatrix& m) {
  EigenPairs ep = eigen_pairs(m);
  const double norm = std::max(std::abs(ep.values(0)), std::abs(ep.values(ep.values.size() - 1)));
  if (ep.values(0) <= eig_tolerance(norm)) {
    throw Error(ErrorKind::Singular,
                "psd_inv_sqrt: smallest eigenvalue " + std::to_string(ep.values(0)) + " <= tol_eig");
  }
  const Eigen::VectorXd inv = ep.values.array().sqrt().inverse();
  return SymMatrix(ep.vectors * inv.asDiagonal() * ep.vectors.transpose());
}

SymMatrix empirical_second_moment(const DataMatrix& x) {
  // Columns of X are contiguous in the transposed copy.
  const RowMatrix xt = x.rows().transpose();
  const auto d = static_cast<std::size_t>(x.d());
  const auto n = static_cast<std::size_t>(x.n());
  RowMatrix out(x.d(), x.d());
  kernels::row_gram(xt.data(), d, n, n, out.data());
  out /= static_cast<double>(x.n());
  return SymMatrix(Eigen::MatrixXd(out));
}

SymMatrix gram(const DataMatrix& x) {
  const auto n = static_cast<std::size_t>(x.n());
  const auto d = static_cast<std::size_t>(x.d());
  RowMatrix out(x.n(), x.n());
  kernels::row_gram(x.rows().data(), n, d, d, out.data());
  return SymMatrix(Eigen::MatrixXd(out));
}

Spectrum empirical_spectrum(const DataMatrix& x) {
  const double inv_n = 1.0 / static_cast<double>(x.n());
  if (x.d() <= x.n()) return psd_eigvals_desc(empirical_second_moment(x));
  return psd_eigvals_desc(gram(x).scaled(inv_n));
}

double deviation_from_identity(const SymMatrix& m) {
  const Eigen::VectorXd asc = eigenvalues_ascending(m);
  return std::max(std::abs(asc(0) - 1.0), std::abs(asc(asc.size() - 1) - 1.0));
}

Interval weyl_sandwich(double dev) {
  if (!(dev >= 0.0)) throw Error(ErrorKind::InvalidInput, "weyl_sandwich needs dev >= 0");
  return {1.0 - dev, 1.0 + dev};
}

DataMatrix right_multiply(const DataMatrix& z, const SymMatrix& s) {
  if (z.d() != s.dim()) throw Error(ErrorKind::InvalidInput, "factor dimension does not match data");
  return DataMatrix(RowMatrix(z.rows() * s.matrix()));
}

SymMatrix congruence(const SymMatrix& s, const SymMatrix& m) {
  if (s.dim() != m.dim()) throw Error(ErrorKind::InvalidInput, "congruence dimension mismatch");
  return SymMatrix(Eigen::MatrixXd(s.matrix() * m.matrix() * s.matrix()));
}

}  // namespace spectra
