#pragma once

#include <complex>
#include <cstdint>
#include <map>

namespace qdeform {

using cplx = std::complex<double>;

/// Finite Laurent polynomial sum_k c_k z^k with complex coefficients.
/// Canonical: exact zeros are never stored.
class LaurentPoly {
 public:
  using Terms = std::map<std::int64_t, cplx>;

  LaurentPoly() = default;
  static LaurentPoly monomial(std::int64_t k, cplx c = 1.0);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  cplx coefficient(std::int64_t k) const;

  /// Adds c z^k, dropping the term if the sum is exactly zero.
  void add(std::int64_t k, cplx c);

  cplx evaluate(cplx z) const;
  /// phi(c z) as a polynomial: coefficients scaled by c^k.
  LaurentPoly rescaled(cplx c) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(cplx k);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(cplx k, LaurentPoly a) { return a *= k; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// Exact coefficient equality.
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

/// max_k |a_k - b_k|.
double max_coeff_diff(const LaurentPoly& a, const LaurentPoly& b);

/// Coefficientwise |a_k - b_k| <= tol * max(1, |a_k|, |b_k|).
bool approx_equal(const LaurentPoly& a, const LaurentPoly& b, double tol);

}  // namespace qdeform
