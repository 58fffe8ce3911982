#pragma once

#include <cstdint>
#include <vector>

#include "qdeform/check.hpp"
#include "qdeform/fock.hpp"

namespace qdeform {

/// su(2)-type generators on a truncated space. With r = p^alpha q^-gamma:
///
///   Jordan-Schwinger   J+ = r^(Nb/2) a+ b,  J- = b+ a r^(Nb/2),  J0 = (Na - Nb)/2
///   Holstein-Primakoff J+ = r^(N/2) a+ sqrt([2j - N]),  J- = sqrt([2j - N]) a r^(N/2),  J0 = N - j
///
/// Functions of N are applied on the Nop diagonal. Products act rightmost first.
/// J+ shifts J0 by s, so the grading reads [J0, J+-] = +-s J+-.
struct Su2Realization {
  Matrix Jp, Jm, J0, Ctilde;
  double j = 0.0;  // Holstein-Primakoff spin; 0 for Jordan-Schwinger
  Variant variant = Variant::GChJ;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;  // 0 for Holstein-Primakoff
  double nu0 = 0.0;
  DeformationParams params;
  InteriorMask interior;
  /// Oscillator b (Jordan-Schwinger only), kept for the C2 correction terms.
  FockRep rep_b;
};

/// Tensor index i_a * dim_b + i_b. Throws ParamMismatch unless both reps share
/// params, variant and nu0.
Su2Realization jordan_schwinger(const FockRep& rep_a, const FockRep& rep_b);

/// [J0, J+] = s J+, [J0, J-] = -s J-.
CheckRecord check_su2_grading(const Su2Realization& r, double tol = 1e-12);

/// Ctilde commutes with J0 and J+-.
CheckRecord check_ctilde_central(const Su2Realization& r, double tol = kDefaultTolerance);

/// J+J- - r^s J-J+ = (1 - C1 D) [2 J0] for GD / GChJ / GChJ_shifted sources
/// (C1 = 0 unless shifted). Throws WrongVariant for GHY_shifted.
CheckRecord check_js_quommutator(const Su2Realization& r, double tol = kDefaultTolerance);

/// GHY_shifted sources: J+J- - r^s J-J+ = [2J0] + r^(Ctilde - J0) C2 ([Ctilde-J0+s]
/// - (PQ)^(2J0)[Ctilde-J0] - (PQ)^(2Ctilde)[Ctilde+J0+s] + (PQ)^s [Ctilde+J0]), with C2 that of
/// oscillator b. Gated only when nu0 = 0; the directly derived correction
/// r^Nb [nu0]([Na] - [Na+s] + [Nb+s] - [Nb]) is recorded as the extra "derived_form".
CheckRecord check_su2_ghy(const Su2Realization& r, double tol = kDefaultTolerance);

/// Number of rungs kept by holstein_primakoff: min(dim, floor((2j - N_0)/s) + 1)
/// with N_0 the lowest number eigenvalue.
std::size_t hp_dimension(const FockRep& rep, double j);

/// Rebuilds `rep` with hp_dimension rungs. Throws NegativeStructureValue when no
/// rung satisfies N <= 2j.
Su2Realization holstein_primakoff(const FockRep& rep, double j);

/// Gated on plain oscillators: J+J- = r^N [N][2j-N+s], J-J+ = r^(N+s) [N+s][2j-N].
CheckRecord check_hp_composition(const Su2Realization& r, double tol = kDefaultTolerance);

/// Documentation check: J+J- - r^s J-J+ = [-2J0] + C Q^(-2J0). C is not fixed by
/// the algebra; it is fitted by least squares over the interior and the
/// remaining deviation reported. Never gated.
CheckRecord check_hp_eq36(const Su2Realization& r);

/// max over the interior of |[J+, J-] - 2 J0 / s| (the classical relation).
double hp_classical_residual(const Su2Realization& r);

/// Residual of [J+, J-] - 2 J0 along a path towards p = q = 1.
ConvergenceReport hp_classical_limit(std::span<const DeformationParams> path, double j,
                                     std::size_t dim);

/// su(1,1) action on monomials z^k, k in [k_min, k_max] (index k - k_min):
///   K-1 z^k = [k] z^(k-1),  K+1 z^k = [k+2h] z^(k+1),
///   M z^k = P^(h+k) z^k,    N_gen z^k = Q^(h+k) z^k,   K0 z^k = (h+k) z^k.
struct Su11FieldRep {
  double h = 0.0;
  std::int64_t k_min = 0;
  std::int64_t k_max = 0;
  DeformationParams params;
  Matrix Km, Kp, M, Ngen, K0;

  std::size_t dim() const { return static_cast<std::size_t>(k_max - k_min + 1); }
  /// Window edges are truncation edges for K+-.
  InteriorMask interior() const;
};

Su11FieldRep su11_field_rep(double h, const DeformationParams& params, std::int64_t k_min,
                            std::int64_t k_max);

/// Gated: K-K+ = [k+1][k+2h], K+K- = [k][k-1+2h], [K0, K+-] = +-K+-,
/// M K+- = P^(+-1) K+- M, N_gen K+- = Q^(+-1) K+- N_gen.
std::vector<CheckRecord> check_su11(const Su11FieldRep& rep, double tol = kDefaultTolerance);

/// Documentation check: K-K+ - r^s K+K- = [2K0].
CheckRecord check_su11_eq53(const Su11FieldRep& rep);

/// Coproduct images on the tensor of two monomial reps with the same window.
struct Coproduct {
  Su11FieldRep rep1, rep2;
  Matrix dKp, dKm, dM, dN, dK0;
  InteriorMask interior;
};

Coproduct make_coproduct(double h1, double h2, const DeformationParams& params,
                         std::int64_t k_min, std::int64_t k_max);

/// Gated structural checks (grading, M/N twisting, dM dN = (MN) (x) (MN)) plus
/// the documentation quommutator check on the coproduct images.
std::vector<CheckRecord> coproduct_check(double h1, double h2, const DeformationParams& params,
                                         std::int64_t k_min, std::int64_t k_max,
                                         double tol = kDefaultTolerance);

/// max |dK+- - (K+- (x) 1 + 1 (x) K+-)| along a path towards p = q = 1.
ConvergenceReport coproduct_classical_limit(std::span<const DeformationParams> path, double h1,
                                            double h2, std::int64_t k_min, std::int64_t k_max);

}  // namespace qdeform
