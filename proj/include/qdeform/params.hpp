#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qdeform {

/// Relative/absolute tolerances shared by the numeric checks.
inline constexpr double kAbsFloor = 1e-14;
inline constexpr double kDegenerateEps = 1e-9;
inline constexpr double kStepSnapTol = 1e-12;

/// |a - b| <= tol * max(|a|, |b|, scale), never tighter than kAbsFloor.
bool rel_close(double a, double b, double tol, double scale = 0.0);

struct RawParams {
  double p = 1.0;
  double q = 1.0;
  double alpha = 1.0;
  double gamma = 1.0;
  double l = 1.0;
};

/// The five deformation parameters (p, q, alpha, gamma, l) with the derived
/// quantities the structure function needs:
///
///   P = p^(-alpha),  Q = q^gamma,  s = l / (alpha * gamma),
///   D = p^(-l/gamma) - q^(l/alpha)  (== P^s - Q^s).
///
/// Immutable once validated. In ladder mode `s` is a positive integer.
class DeformationParams {
 public:
  /// The classical point p = q = alpha = gamma = l = 1 (ladder mode, s = 1).
  DeformationParams() = default;

  /// Throws Error{NonPositiveBase | ZeroExponent | NonIntegerStep}.
  static DeformationParams validate(const RawParams& raw, bool ladder_mode);
  static DeformationParams validate(double p, double q, double alpha, double gamma, double l,
                                    bool ladder_mode) {
    return validate(RawParams{p, q, alpha, gamma, l}, ladder_mode);
  }

  double p() const { return raw_.p; }
  double q() const { return raw_.q; }
  double alpha() const { return raw_.alpha; }
  double gamma() const { return raw_.gamma; }
  double l() const { return raw_.l; }
  const RawParams& raw() const { return raw_; }

  double P() const { return P_; }
  double Q() const { return Q_; }
  double D() const { return D_; }
  double s() const { return s_; }
  double log_P() const { return log_P_; }
  double log_Q() const { return log_Q_; }
  bool ladder_mode() const { return ladder_; }
  /// Ladder step as an integer; only meaningful in ladder mode.
  std::int64_t step() const { return step_; }

  /// True when |P - Q| < kDegenerateEps and the structure function uses its
  /// coincident-base limit.
  bool degenerate() const;

  /// r = p^alpha q^(-gamma) = 1/(P Q): the quommutator weight base of the su(2) realizations.
  double su_weight_base() const { return 1.0 / (P_ * Q_); }

  bool operator==(const DeformationParams& o) const;

 private:
  RawParams raw_{};
  double P_ = 1.0;
  double Q_ = 1.0;
  double D_ = 0.0;
  double s_ = 1.0;
  double log_P_ = 0.0;
  double log_Q_ = 0.0;
  std::int64_t step_ = 1;
  bool ladder_ = true;
};

/// Generalized deformed number [x] = (P^x - Q^x) / (P^s - Q^s).
///
/// Evaluated as Q^(x-s) * expm1(x*d) / expm1(s*d) with d = ln P - ln Q, which
/// is the same quantity without the cancellation of the difference form. When
/// |P - Q| < eps_degenerate the L'Hopital limit (x/s) P^(x-s) is returned.
double bracket(double x, const DeformationParams& params, double eps_degenerate = kDegenerateEps);

/// [n]! = [n][n-1]...[1]; [0]! = 1.
double bracket_factorial(std::int64_t n, const DeformationParams& params);

/// Limit of [x] as p, q -> 1 with alpha, gamma, l fixed.
inline double classical_bracket(double x, const DeformationParams& params) {
  return x / params.s();
}

struct LimitPoint {
  double p = 0.0;
  double q = 0.0;
  double value = 0.0;
  double residual = 0.0;
};

struct ConvergenceReport {
  double x = 0.0;
  double limit = 0.0;
  std::vector<LimitPoint> points;
  bool monotone = false;  // residuals non-increasing along the path
  double final_residual = 0.0;
};

/// Tracks |[x] - x*alpha*gamma/l| along a path of parameter sets approaching p = q = 1.
ConvergenceReport classical_limit_check(double x, std::span<const DeformationParams> path);

/// Evaluates `residual` at each point of `path`; points[i].value holds the residual too.
ConvergenceReport track_convergence(std::span<const DeformationParams> path,
                                    const std::function<double(const DeformationParams&)>& residual);

/// p = q = 1 + 10^(-k), k = k_first..k_last, at fixed alpha, gamma, l.
std::vector<DeformationParams> classical_path(double alpha, double gamma, double l, int k_first,
                                              int k_last, bool ladder_mode = false);

enum class SpecializationTag { ArikCoon, BiedenharnMacfarlane, ChakrabartiJagannathan, Classical };

std::string_view specialization_name(SpecializationTag tag);

/// A named special case of the unified deformation. `mapping` takes the
/// reduced parameters (p, q) of the family and returns the full set; families
/// with fewer parameters ignore the unused ones.
struct Specialization {
  SpecializationTag tag;
  std::function<DeformationParams(double p, double q)> mapping;
};

/// ChakrabartiJagannathan: alpha = gamma = l = 1, (p, q) free.
/// ArikCoon: additionally p = 1.
/// BiedenharnMacfarlane: alpha = gamma = l = 1 and p = q (also covers the Kwek-Oh form).
/// Classical: p = q = 1, so [x] = x.
Specialization make_specialization(SpecializationTag tag);

}  // namespace qdeform
