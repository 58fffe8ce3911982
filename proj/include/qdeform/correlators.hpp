#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qdeform/check.hpp"
#include "qdeform/params.hpp"

namespace qdeform {

using cplx = std::complex<double>;

/// Truncated (x; r)_inf = prod_{j<terms} (1 - x r^j). `tail_bound` bounds the
/// modulus of the log of the omitted factors.
struct QPochhammer {
  cplx x;
  double r = 0.0;
  std::size_t terms = 0;
  cplx value;
  double tail_bound = 0.0;
};

/// Adaptive truncation until tail_bound < rel_tol. Throws BaseNotContractive
/// for |r| >= 1. An exact zero factor gives value 0 with tail_bound 0.
QPochhammer qpochhammer(cplx x, double r, double rel_tol = 1e-12);

/// Fixed truncation; tail_bound is reported for that T (infinite if the
/// estimate does not apply yet).
QPochhammer qpochhammer_truncated(cplx x, double r, std::size_t terms);

/// h_a(z) = (az; r)_inf / (z; r)_inf. Throws DenominatorZero at z = r^-j.
cplx h_a(cplx z, cplx a, double r);

/// |h_a(z) - (1-az)/(1-z) h_a(rz)| / max(|h_a(z)|, tiny).
double h_a_functional_residual(cplx z, cplx a, double r);

/// r = p^alpha q^gamma = Q/P. Throws BaseNotContractive unless r < 1.
double correlator_base(const DeformationParams& params);

/// z1^omega h_a(x), a = r^(2h), x = r^-h z2 / z1 (principal branch of z1^omega).
/// Throws OriginArgument for z1 = 0.
cplx two_point_ansatz(cplx z1, cplx z2, double h, double omega, const DeformationParams& params);

/// The ansatz at omega = -2h.
cplx two_point(cplx z1, cplx z2, double h, const DeformationParams& params);

struct WardSample {
  cplx z1;
  cplx z2;
};

/// z1 in {1, 1.5 + 0.5i}, z2/z1 in {0.1, 0.3, 0.5 + 0.2i, 0.5 - 0.2i}.
std::vector<WardSample> default_ward_samples();

/// Records, in order:
///   corr1  Delta(K_-1) G = 0 by coproduct action on the ansatz; gated iff h1 = h2.
///          Extra "reduced_form": the equal-weight reduction evaluated directly.
///   corr2  Delta(K_+1) G = 0, documentation: main residual uses the literal
///          weights q^(-2 gamma h2), q^(2 gamma h2); extra "derived_form" uses
///          q^(2 gamma h2), q^(2 gamma h1) from the coproduct.
///   corr4  G(P z1, Q z2) = P^omega (1-x)/(1-ax) G; extra "literal_factor" with factor 1.
///   corr5  G(P z1, P z2) = P^omega G.
///   corr6  G(Q z1, Q z2) = Q^omega G (= q^(gamma omega)); extra "literal_exponent"
///          with q^(alpha omega).
/// Samples within 1e-3 of a product zero are skipped and counted in the notes.
/// The ansatz uses h1 as its weight.
std::vector<CheckRecord> ward_residual(double h1, double h2, const DeformationParams& params,
                                       std::span<const WardSample> samples, double omega,
                                       double tol = 1e-8);

struct OmegaScanRow {
  double omega = 0.0;
  double residual = 0.0;  // corr1 residual
};

struct OmegaScan {
  std::vector<OmegaScanRow> rows;
  double best_omega = 0.0;
};

OmegaScan omega_scan(double h, const DeformationParams& params,
                     std::span<const WardSample> samples, std::span<const double> omegas);

/// p = q = 1 - delta, alpha = gamma = l = 1.
std::vector<DeformationParams> correlator_classical_path(std::span<const double> deltas);

/// Relative deviation of two_point from z1^(-2h) (1 - z2/z1)^(-2h) along `path`.
ConvergenceReport correlator_classical_limit(std::span<const DeformationParams> path, double h,
                                             cplx z1, cplx z2);

}  // namespace qdeform
