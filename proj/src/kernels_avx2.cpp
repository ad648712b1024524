// Compiled with -mavx2 -mfma; only reached after a cpuid check.
#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace nmach::kernels::detail {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_squares_avx2(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(a + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * a[i];
  return s;
}

double abs_sum_avx2(const double* a, std::size_t n) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(a + i), mask));
  double s = hsum(acc);
  for (; i < n; ++i) s += std::fabs(a[i]);
  return s;
}

double sqrt_product_sum_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_max_pd(_mm256_loadu_pd(a + i), zero);
    __m256d y = _mm256_max_pd(_mm256_loadu_pd(b + i), zero);
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(_mm256_mul_pd(x, y)));
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    double x = a[i] > 0.0 ? a[i] : 0.0;
    double y = b[i] > 0.0 ? b[i] : 0.0;
    s += std::sqrt(x * y);
  }
  return s;
}

double weighted_sqrt_sum_avx2(const double* w, const double* c, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_sqrt_pd(_mm256_max_pd(_mm256_loadu_pd(c + i), zero));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), r, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * std::sqrt(c[i] > 0.0 ? c[i] : 0.0);
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void vec_mat_avx2(const double* v, const double* m, std::size_t rows, std::size_t cols,
                  double* out) {
  for (std::size_t j = 0; j < cols; ++j) out[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (v[i] == 0.0) continue;
    axpy_avx2(v[i], m + i * cols, out, cols);
  }
}

}  // namespace nmach::kernels::detail
