// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace spectra::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline __m256d vabs(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline __m256d vpow(__m256d base, int p) {
  __m256d result = _mm256_set1_pd(1.0);
  while (p > 0) {
    if (p & 1) result = _mm256_mul_pd(result, base);
    base = _mm256_mul_pd(base, base);
    p >>= 1;
  }
  return result;
}

inline void neumaier_add(double& sum, double& comp, double term) {
  const double t = sum + term;
  if (std::abs(sum) >= std::abs(term)) {
    comp += (sum - t) + term;
  } else {
    comp += (term - t) + sum;
  }
  sum = t;
}

constexpr int kMaxPowers = 32;

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 16 <= n; k += 16) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
    acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 8), _mm256_loadu_pd(b + k + 8), acc2);
    acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 12), _mm256_loadu_pd(b + k + 12), acc3);
  }
  for (; k + 4 <= n; k += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

double dot_compensated(const double* a, const double* b, std::size_t n) {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d term = _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    const __m256d t = _mm256_add_pd(sum, term);
    const __m256d sum_big = _mm256_cmp_pd(vabs(sum), vabs(term), _CMP_GE_OQ);
    const __m256d c_sum = _mm256_add_pd(_mm256_sub_pd(sum, t), term);
    const __m256d c_term = _mm256_add_pd(_mm256_sub_pd(term, t), sum);
    comp = _mm256_add_pd(comp, _mm256_blendv_pd(c_term, c_sum, sum_big));
    sum = t;
  }
  alignas(32) double lanes[4];
  alignas(32) double comps[4];
  _mm256_store_pd(lanes, sum);
  _mm256_store_pd(comps, comp);
  double total = 0.0;
  double total_comp = 0.0;
  for (int l = 0; l < 4; ++l) {
    neumaier_add(total, total_comp, lanes[l]);
    neumaier_add(total, total_comp, comps[l]);
  }
  for (; k < n; ++k) neumaier_add(total, total_comp, a[k] * b[k]);
  return total + total_comp;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(y + k, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), _mm256_loadu_pd(y + k)));
  }
  for (; k < n; ++k) y[k] += alpha * x[k];
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    _mm256_storeu_pd(out + k, _mm256_mul_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k)));
  }
  for (; k < n; ++k) out[k] = a[k] * b[k];
}

double abs_power_sum(const double* x, std::size_t n, int p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc = _mm256_add_pd(acc, vpow(vabs(_mm256_loadu_pd(x + k)), p));
  }
  double s = hsum(acc);
  for (; k < n; ++k) {
    double term = 1.0;
    double base = std::abs(x[k]);
    for (int e = p; e > 0; e >>= 1) {
      if (e & 1) term *= base;
      base *= base;
    }
    s += term;
  }
  return s;
}

void even_power_sums(const double* x, std::size_t n, double* sums, int count) {
  if (count > kMaxPowers) {
    scalar::even_power_sums(x, n, sums, count);
    return;
  }
  __m256d acc[kMaxPowers];
  for (int j = 0; j < count; ++j) acc[j] = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v = _mm256_loadu_pd(x + k);
    const __m256d sq = _mm256_mul_pd(v, v);
    __m256d term = sq;
    for (int j = 0; j < count; ++j) {
      acc[j] = _mm256_add_pd(acc[j], term);
      term = _mm256_mul_pd(term, sq);
    }
  }
  for (int j = 0; j < count; ++j) sums[j] = hsum(acc[j]);
  for (; k < n; ++k) {
    const double sq = x[k] * x[k];
    double term = sq;
    for (int j = 0; j < count; ++j) {
      sums[j] += term;
      term *= sq;
    }
  }
}

}  // namespace spectra::kernels::avx2
