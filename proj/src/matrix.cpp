#include "qdeform/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qdeform/error.hpp"
#include "qdeform/kernels.hpp"

namespace qdeform {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::InvalidArgument, std::string(op) + ": shape mismatch");
  }
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

std::vector<double> Matrix::diag() const {
  std::vector<double> d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::abs() const {
  Matrix m = *this;
  for (double& x : m.data_) x = std::fabs(x);
  return m;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::fabs(x));
  return m;
}

bool Matrix::is_diagonal(double tol) const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && std::fabs((*this)(r, c)) > tol) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double k) {
  for (double& x : data_) x *= k;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matmul: inner dimension");
  Matrix c(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Matrix abs_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::InvalidArgument, "matmul: inner dimension");
  Matrix c(a.rows(), b.cols());
  kernels::matmul_abs(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
          k(i * b.rows() + r, j * b.cols() + c) = aij * b(r, c);
    }
  return k;
}

Matrix diag_map(const Matrix& diagonal_op, const std::function<double(double)>& f) {
  std::vector<double> d = diagonal_op.diag();
  for (double& x : d) x = f(x);
  return Matrix::diagonal(d);
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Tracked operator*(const Tracked& a, const Tracked& b) {
  return Tracked(a.value * b.value, abs_product(a.mag, b.mag));
}

Tracked operator+(const Tracked& a, const Tracked& b) {
  return Tracked(a.value + b.value, a.mag + b.mag);
}

Tracked operator-(const Tracked& a, const Tracked& b) {
  return Tracked(a.value - b.value, a.mag + b.mag);
}

Tracked operator*(double k, const Tracked& a) {
  return Tracked(k * a.value, std::fabs(k) * a.mag);
}

InteriorMask InteriorMask::range(std::size_t n, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  std::vector<bool> keep(n, false);
  for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0);
       i <= hi && i < static_cast<std::ptrdiff_t>(n); ++i) {
    keep[static_cast<std::size_t>(i)] = true;
  }
  return InteriorMask(std::move(keep));
}

InteriorMask InteriorMask::tensor(const InteriorMask& a, const InteriorMask& b) {
  std::vector<bool> keep(a.size() * b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) keep[i * b.size() + j] = a[i] && b[j];
  return InteriorMask(std::move(keep));
}

std::size_t InteriorMask::count() const {
  return static_cast<std::size_t>(std::count(keep_.begin(), keep_.end(), true));
}

Residual& Residual::merge(const Residual& o) {
  const bool nan = std::isnan(scaled) || std::isnan(o.scaled);
  scaled = nan ? std::nan("") : std::max(scaled, o.scaled);
  absolute = std::max(absolute, o.absolute);
  scale = std::max(scale, o.scale);
  vacuous = vacuous && o.vacuous;
  return *this;
}

Residual interior_residual(const Matrix& lhs, const Matrix& rhs, const Matrix& mag,
                           const InteriorMask& mask) {
  require_same_shape(lhs, rhs, "residual");
  require_same_shape(lhs, mag, "residual");
  if (mask.size() != lhs.rows() || !lhs.square()) {
    throw Error(ErrorCode::InvalidArgument, "residual: mask does not match operator dimension");
  }
  std::vector<double> l, r, m;
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    if (!mask[i]) continue;
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      if (!mask[j]) continue;
      l.push_back(lhs(i, j));
      r.push_back(rhs(i, j));
      m.push_back(mag(i, j));
    }
  }
  Residual res;
  res.vacuous = l.empty();
  if (res.vacuous) return res;
  res.scaled = kernels::max_scaled_diff(l, r, m);
  res.absolute = kernels::max_abs_diff(l, r);
  res.scale = *std::max_element(m.begin(), m.end());
  return res;
}

Residual interior_residual(const Tracked& lhs, const Tracked& rhs, const InteriorMask& mask) {
  return interior_residual(lhs.value, rhs.value, lhs.mag + rhs.mag, mask);
}

}  // namespace qdeform
