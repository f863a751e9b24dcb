#include <atomic>
#include <cstdlib>
#include <string>

#include "kernels_impl.hpp"
#include "spectra/error.hpp"

namespace spectra::kernels {

namespace {

constexpr KernelTable kScalarTable{
    scalar::dot,      scalar::dot_compensated, scalar::axpy,
    scalar::hadamard, scalar::abs_power_sum,   scalar::even_power_sums,
};

#if defined(SPECTRA_HAVE_AVX2_TU)
constexpr KernelTable kAvx2Table{
    avx2::dot,      avx2::dot_compensated, avx2::axpy,
    avx2::hadamard, avx2::abs_power_sum,   avx2::even_power_sums,
};
#endif

bool cpu_has_avx2() noexcept {
#if defined(SPECTRA_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend default_backend() noexcept {
  if (const char* env = std::getenv("SPECTRA_KERNELS"); env && std::string(env) == "scalar") {
    return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{default_backend()};
  return backend;
}

void check_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorKind::InvalidInput, "kernel operands differ in length");
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) noexcept {
  return b == Backend::Scalar || cpu_has_avx2();
}

const KernelTable& table(Backend b) {
  if (!backend_available(b)) {
    throw Error(ErrorKind::Unsupported, std::string("kernel backend not available: ") +
                                            std::string(backend_name(b)));
  }
#if defined(SPECTRA_HAVE_AVX2_TU)
  if (b == Backend::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

Backend active_backend() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  table(b);
  active().store(b, std::memory_order_relaxed);
}

double dot(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  return table(active_backend()).dot(a.data(), b.data(), a.size());
}

double dot_compensated(std::span<const double> a, std::span<const double> b) {
  check_same_size(a.size(), b.size());
  return table(active_backend()).dot_compensated(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_same_size(x.size(), y.size());
  table(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}

void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_same_size(a.size(), b.size());
  check_same_size(a.size(), out.size());
  table(active_backend()).hadamard(a.data(), b.data(), out.data(), a.size());
}

double abs_power_sum(std::span<const double> x, int p) {
  if (p < 1) throw Error(ErrorKind::InvalidInput, "abs_power_sum needs p >= 1");
  return table(active_backend()).abs_power_sum(x.data(), x.size(), p);
}

std::vector<double> even_power_sums(std::span<const double> x, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "even_power_sums needs count >= 1");
  std::vector<double> sums(static_cast<std::size_t>(count));
  table(active_backend()).even_power_sums(x.data(), x.size(), sums.data(), count);
  return sums;
}

void row_gram(const double* data, std::size_t rows, std::size_t cols, std::size_t stride,
              double* out, bool compensated) {
  const KernelTable& t = table(active_backend());
  const auto kernel = compensated ? t.dot_compensated : t.dot;
  for (std::size_t i = 0; i < rows; ++i) {
    const double* ri = data + i * stride;
    for (std::size_t j = i; j < rows; ++j) {
      const double v = kernel(ri, data + j * stride, cols);
      out[i * rows + j] = v;
      out[j * rows + i] = v;
    }
  }
}

}  // namespace spectra::kernels
