#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qdeform {

/// Dense row-major real matrix. Products go through the dispatched kernels.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  std::vector<double> diag() const;
  Matrix transpose() const;
  Matrix abs() const;
  double max_abs() const;
  bool is_diagonal(double tol = 0.0) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double k);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double k) { return a *= k; }
  friend Matrix operator*(double k, Matrix a) { return a *= k; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

  bool operator==(const Matrix& o) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// |A| * |B| with the same dispatch as operator*.
Matrix abs_product(const Matrix& a, const Matrix& b);

/// Kronecker product A (x) B; index (i, j) of the result space is i * B.rows() + j.
Matrix kron(const Matrix& a, const Matrix& b);

/// Applies f to each diagonal entry of a diagonal matrix (spectral function of an operator).
Matrix diag_map(const Matrix& diagonal_op, const std::function<double(double)>& f);

Matrix commutator(const Matrix& a, const Matrix& b);

/// An operator value carried with an entrywise bound on the magnitudes of the
/// terms that produced it. Rounding error in entry (i, j) is a small multiple of
/// eps * mag(i, j), so residuals are reported as |L - R| / max(1, mag).
struct Tracked {
  Matrix value;
  Matrix mag;

  Tracked() = default;
  /// An exactly known operator: its magnitude is its absolute value.
  explicit Tracked(Matrix v) : value(std::move(v)), mag(value.abs()) {}
  Tracked(Matrix v, Matrix m) : value(std::move(v)), mag(std::move(m)) {}

  friend Tracked operator*(const Tracked& a, const Tracked& b);
  friend Tracked operator+(const Tracked& a, const Tracked& b);
  friend Tracked operator-(const Tracked& a, const Tracked& b);
  friend Tracked operator*(double k, const Tracked& a);
};

/// Which basis states of a (possibly tensor-product) space count as interior.
/// A matrix entry (r, c) is compared only if both r and c are interior.
class InteriorMask {
 public:
  InteriorMask() = default;
  explicit InteriorMask(std::vector<bool> keep) : keep_(std::move(keep)) {}

  /// Keeps indices lo..hi inclusive of a space of dimension n (empty if lo > hi).
  static InteriorMask range(std::size_t n, std::ptrdiff_t lo, std::ptrdiff_t hi);
  /// Mask on the tensor space, index i_a * nb + i_b.
  static InteriorMask tensor(const InteriorMask& a, const InteriorMask& b);

  std::size_t size() const { return keep_.size(); }
  bool operator[](std::size_t i) const { return keep_[i]; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

 private:
  std::vector<bool> keep_;
};

struct Residual {
  double scaled = 0.0;    // max |L - R| / max(1, mag) over the interior
  double absolute = 0.0;  // max |L - R| over the interior
  double scale = 0.0;     // max mag over the interior
  bool vacuous = false;   // interior was empty

  /// Identity element for merge(): nothing compared yet.
  static Residual none() {
    Residual r;
    r.vacuous = true;
    return r;
  }

  Residual& merge(const Residual& o);
};

/// Compares L and R entrywise on the interior. `mag` bounds the term magnitudes
/// of both sides (typically L.mag + R.mag).
Residual interior_residual(const Matrix& lhs, const Matrix& rhs, const Matrix& mag,
                           const InteriorMask& mask);
Residual interior_residual(const Tracked& lhs, const Tracked& rhs, const InteriorMask& mask);

}  // namespace qdeform
