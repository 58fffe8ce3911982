// aarch64 only. NEON has no FMA contraction here either: vmulq + vaddq.

#include "qdeform/kernels.hpp"

#if defined(__aarch64__)

#include <algorithm>
#include <arm_neon.h>
#include <cmath>

namespace qdeform::kernels::neon {
namespace {

template <bool Abs>
void matmul_impl(const double* a, const double* b, double* c, std::size_t rows,
                 std::size_t inner, std::size_t cols) {
  std::fill(c, c + rows * cols, 0.0);
  const std::size_t vec_end = cols - cols % 2;
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      double aik = a[i * inner + k];
      if constexpr (Abs) aik = std::fabs(aik);
      const float64x2_t av = vdupq_n_f64(aik);
      const double* brow = b + k * cols;
      std::size_t j = 0;
      for (; j < vec_end; j += 2) {
        float64x2_t bv = vld1q_f64(brow + j);
        if constexpr (Abs) bv = vabsq_f64(bv);
        vst1q_f64(crow + j, vaddq_f64(vld1q_f64(crow + j), vmulq_f64(av, bv)));
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
  float64x2_t acc = vdupq_n_f64(0.0);
  bool nan = false;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    nan = nan || std::isnan(vgetq_lane_f64(d, 0)) || std::isnan(vgetq_lane_f64(d, 1));
    acc = vmaxnmq_f64(acc, d);
  }
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n) {
  const float64x2_t one = vdupq_n_f64(1.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  bool nan = false;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    const float64x2_t s = vmaxnmq_f64(vld1q_f64(scale + i), one);
    const float64x2_t q = vdivq_f64(d, s);
    nan = nan || std::isnan(vgetq_lane_f64(q, 0)) || std::isnan(vgetq_lane_f64(q, 1));
    acc = vmaxnmq_f64(acc, q);
  }
  double m = std::max(vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1));
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]) / std::max(1.0, scale[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

}  // namespace qdeform::kernels::neon

#endif
