#include <cmath>

#include "kernels_impl.hpp"

namespace spectra::kernels::scalar {

namespace {

// Neumaier's variant of Kahan summation: one step.
inline void neumaier_add(double& sum, double& comp, double term) {
  const double t = sum + term;
  if (std::abs(sum) >= std::abs(term)) {
    comp += (sum - t) + term;
  } else {
    comp += (term - t) + sum;
  }
  sum = t;
}

inline double int_pow(double x, int p) {
  double result = 1.0;
  double base = x;
  while (p > 0) {
    if (p & 1) result *= base;
    base *= base;
    p >>= 1;
  }
  return result;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

double dot_compensated(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t k = 0; k < n; ++k) neumaier_add(sum, comp, a[k] * b[k]);
  return sum + comp;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * b[k];
}

double abs_power_sum(const double* x, std::size_t n, int p) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += int_pow(std::abs(x[k]), p);
  return s;
}

void even_power_sums(const double* x, std::size_t n, double* sums, int count) {
  for (int j = 0; j < count; ++j) sums[j] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double sq = x[k] * x[k];
    double term = sq;
    for (int j = 0; j < count; ++j) {
      sums[j] += term;
      term *= sq;
    }
  }
}

}  // namespace spectra::kernels::scalar
