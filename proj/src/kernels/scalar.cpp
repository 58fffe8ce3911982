#include "qdeform/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace qdeform::kernels::scalar {

// i-k-j loop order: each C row is accumulated in k order, which the vector
// variants reproduce lane by lane.
void matmul(const double* a, const double* b, double* c, std::size_t rows, std::size_t inner,
            std::size_t cols) {
  std::fill(c, c + rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a[i * inner + k];
      const double* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        crow[j] = crow[j] + aik * brow[j];
      }
    }
  }
}

void matmul_abs(const double* a, const double* b, double* c, std::size_t rows,
                std::size_t inner, std::size_t cols) {
  std::fill(c, c + rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = std::fabs(a[i * inner + k]);
      const double* brow = b + k * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        crow[j] = crow[j] + aik * std::fabs(brow[j]);
      }
    }
  }
}

// A NaN anywhere makes the whole reduction NaN; residuals must never hide one.
double max_abs_diff(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  bool nan = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n) {
  double m = 0.0;
  bool nan = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]) / std::max(1.0, scale[i]);
    nan = nan || std::isnan(d);
    m = std::max(m, d);
  }
  return nan ? std::nan("") : m;
}

}  // namespace qdeform::kernels::scalar
