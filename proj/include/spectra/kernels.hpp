#pragma once
// Data-parallel inner loops. Each kernel has a scalar reference
// implementation and, where the host supports it, an AVX2/FMA variant
// selected once at startup. Variants agree up to floating-point
// reassociation; tests/unit/test_kernels.cpp pins the tolerance.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace spectra::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b) noexcept;

/// Function table for one backend. All pointers are non-null.
struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  // Neumaier-compensated dot product.
  double (*dot_compensated)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[k] = a[k] * b[k]
  void (*hadamard)(const double* a, const double* b, double* out, std::size_t n);
  // sum_k |x[k]|^p for integer p >= 1
  double (*abs_power_sum)(const double* x, std::size_t n, int p);
  // sums[j] = sum_k x[k]^(2(j+1)) for j < count
  void (*even_power_sums)(const double* x, std::size_t n, double* sums, int count);
};

bool backend_available(Backend b) noexcept;
const KernelTable& table(Backend b);

/// Backend used by the convenience wrappers below. Defaults to the widest
/// available variant; SPECTRA_KERNELS=scalar in the environment forces the
/// reference path.
Backend active_backend() noexcept;
void set_active_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);
double dot_compensated(std::span<const double> a, std::span<const double> b);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out);
double abs_power_sum(std::span<const double> x, int p);
std::vector<double> even_power_sums(std::span<const double> x, int count);

/// Full symmetric matrix of pairwise row inner products of a row-major
/// `rows x cols` block with leading dimension `stride`. `out` is
/// `rows x rows` row-major.
void row_gram(const double* data, std::size_t rows, std::size_t cols, std::size_t stride,
              double* out, bool compensated = false);

}  // namespace spectra::kernels
