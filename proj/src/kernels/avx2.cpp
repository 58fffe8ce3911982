// Compiled with -mavx2 (no FMA): mul and add stay separate so each lane
// rounds exactly like the scalar reference.

#include "qdeform/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <immintrin.h>

namespace qdeform::kernels::avx2 {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline bool any_nan(__m256d mask) { return _mm256_movemask_pd(mask) != 0; }

inline double hmax(__m256d v) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, v);
  return std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
}

template <bool Abs>
void matmul_impl(const double* a, const double* b, double* c, std::size_t rows,
                 std::size_t inner, std::size_t cols) {
  std::fill(c, c + rows * cols, 0.0);
  const std::size_t vec_end = cols - cols % 4;
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      double aik = a[i * inner + k];
      if constexpr (Abs) aik = std::fabs(aik);
      const __m256d av = _mm256_set1_pd(aik);
      const double* brow = b + k * cols;
      std::size_t j = 0;
      for (; j < vec_end; j += 4) {
        __m256d bv = _mm256_loadu_pd(brow + j);
        if constexpr (Abs) bv = abs_pd(bv);
        const __m256d cv = _mm256_loadu_pd(crow + j);
        _mm256_storeu_pd(crow + j, _mm256_add_pd(cv, _mm256_mul_pd(av, bv)));
      }
      for (; j < cols; ++j) {
        const double bj = Abs ? std::fabs(brow[j]) : brow[j];
        crow[j] = crow[j] + aik * bj;
      }
    }
  }
}

}  // namespace

void matmul(const double* a, const double* b, double* c, std::size_t rows, std::size_t inner,
            std::size_t cols) {
  matmul_impl<false>(a, b, c, rows, inner, cols);
}

void matmul_abs(const double* a, const double* b, double* c, std::size_t rows,
                std::size_t inner, std::size_t cols) {
  matmul_impl<true>(a, b, c, rows, inner, cols);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  __m256d nan_mask = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    nan_mask = _mm256_or_pd(nan_mask, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
    acc = _mm256_max_pd(d, acc);
  }
  double m = hmax(acc);
  bool nan = any_nan(nan_mask);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  __m256d nan_mask = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    // A NaN scale collapses to 1, as std::max(1.0, NaN) does.
    const __m256d s = _mm256_max_pd(_mm256_loadu_pd(scale + i), one);
    const __m256d q = _mm256_div_pd(d, s);
    nan_mask = _mm256_or_pd(nan_mask, _mm256_cmp_pd(q, q, _CMP_UNORD_Q));
    acc = _mm256_max_pd(q, acc);
  }
  double m = hmax(acc);
  bool nan = any_nan(nan_mask);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]) / std::max(1.0, scale[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

}  // namespace qdeform::kernels::avx2
