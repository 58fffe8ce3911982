#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "qdeform/check.hpp"
#include "qdeform/laurent.hpp"
#include "qdeform/params.hpp"

namespace qdeform {

/// T(z) phi(w) for a weight-h field: two simple poles in z,
///   z1 = w P^h with residue  phi(w P) / (w D),
///   z2 = w Q^h with residue -phi(w Q) / (w D),   D = P^s - Q^s.
struct DeformedOPE {
  double h = 0.0;
  LaurentPoly phi;
  DeformationParams params;

  cplx pole1(cplx w) const;
  cplx pole2(cplx w) const;
  cplx residue1(cplx w) const;
  cplx residue2(cplx w) const;
  cplx operator()(cplx z, cplx w) const;
};

/// (1/2 pi i) contour integral of z^(n+1) T(z) phi(w) around both poles, by exact
/// residues, as a Laurent polynomial in w. Throws DenominatorZero when D = 0.
LaurentPoly ope_residue_variation(const LaurentPoly& phi, std::int64_t n, double h,
                                  const DeformationParams& params);

struct ContourIntegrand {
  std::function<cplx(cplx)> f;
  std::vector<cplx> poles;  // known singularities, checked against the contour
};

/// Trapezoidal rule for (1/2 pi i) of f around the circle |z - center| = radius
/// with M equispaced nodes. Throws PoleOnContour if a listed pole lies within
/// 10 eps radius of the circle, InvalidArgument if M < 64 or radius <= 0.
cplx contour_integral_numeric(const ContourIntegrand& integrand, cplx center, double radius,
                              int points);

struct Circle {
  cplx center;
  double radius = 0.0;
};

/// Circles used for the numeric variation at w: one circle around both poles
/// when z^(n+1) is regular at the origin, otherwise one small circle per
/// pole that keeps the origin outside.
std::vector<Circle> variation_contours(const DeformedOPE& ope, std::int64_t n, cplx w);

/// The variation at a point w by quadrature over variation_contours.
cplx ope_numeric_variation(const LaurentPoly& phi, std::int64_t n, double h,
                           const DeformationParams& params, cplx w, int points = 256);

/// [L_n, phi_m] for phi(w) = sum_k phi_k w^(-k-h) with finitely many modes.
/// `coefficients` maps mode index j to the coefficient of phi_j in the result;
/// the weights are those of the twisted product.
struct ModeBracketResult {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double h = 0.0;
  std::map<std::int64_t, cplx> coefficients;
  double weight_L_phi = 1.0;  // p^(alpha(m+h)) q^(-gamma(n+2))
  double weight_phi_L = 1.0;  // p^(alpha(n+2)) q^(-gamma(m+h))
  std::int64_t expected_mode = 0;  // n + m
  cplx expected = 0.0;             // [(h-1)n - m] phi_(n+m)
  double scale = 0.0;              // magnitude of the residue terms, for rounding bounds
};

ModeBracketResult mode_bracket(std::int64_t n, std::int64_t m, double h,
                               const std::map<std::int64_t, cplx>& modes,
                               const DeformationParams& params);

/// Largest deviation of a mode bracket from its closed form, over all modes.
double mode_bracket_deviation(const ModeBracketResult& r);

struct VirasoroStructure {
  double weight_nm = 1.0;  // p^(alpha(m+2)) q^(-gamma(n+2)), multiplies L_n L_m
  double weight_mn = 1.0;  // p^(alpha(n+2)) q^(-gamma(m+2)), multiplies L_m L_n
  double rhs = 0.0;        // [n - m]
};

VirasoroStructure virasoro_structure(std::int64_t n, std::int64_t m,
                                     const DeformationParams& params);

struct AntisymmetryRow {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double value = 0.0;  // |[m-n] + [n-m]|
};

struct AntisymmetryScan {
  std::vector<AntisymmetryRow> rows;
  CheckRecord record;  // documentation check over the window
};

/// Scans n, m in [lo, hi]. Swapping n and m negates the left side of the
/// quommutator, weights included, so consistency needs [m-n] = -[n-m]; that
/// holds only when PQ = 1.
AntisymmetryScan virasoro_antisymmetry_scan(const DeformationParams& params, std::int64_t lo,
                                            std::int64_t hi);

}  // namespace qdeform
