#pragma once

#include "spectra/kernels.hpp"

namespace spectra::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double dot_compensated(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
double abs_power_sum(const double* x, std::size_t n, int p);
void even_power_sums(const double* x, std::size_t n, double* sums, int count);
}  // namespace scalar

#if defined(SPECTRA_HAVE_AVX2_TU)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double dot_compensated(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
double abs_power_sum(const double* x, std::size_t n, int p);
void even_power_sums(const double* x, std::size_t n, double* sums, int count);
}  // namespace avx2
#endif

}  // namespace spectra::kernels
