#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdeform/matrix.hpp"

namespace qdeform {

inline constexpr double kDefaultTolerance = 1e-10;

/// Outcome of one identity check.
///
/// Gated checks are expected to hold and fail the run when they do not.
/// Non-gated (documentation) checks record a known mismatch between a literal
/// formula and the derived one; exceeding tolerance yields DocumentedDiscrepancy.
enum class Verdict { Pass, Fail, Vacuous, DocumentedDiscrepancy };

std::string_view verdict_name(Verdict v);

/// True unless the verdict is Fail.
inline bool verdict_ok(Verdict v) { return v != Verdict::Fail; }

/// NaN residuals always fail, gated or not.
Verdict judge(const Residual& r, double tolerance, bool gated);

/// A secondary residual kept alongside a report, e.g. the same identity with
/// an alternative coefficient.
struct NamedResidual {
  std::string name;
  double value = 0.0;
};

}  // namespace qdeform

namespace qdeform {

/// A named identity check outside the oscillator relation table (su(2),
/// su(1,1), coproduct, OPE, correlators).
struct CheckRecord {
  std::string name;
  Residual residual;
  double tolerance = kDefaultTolerance;
  bool gated = true;
  Verdict verdict = Verdict::Pass;
  std::string note;
  std::vector<NamedResidual> extras;
};

CheckRecord make_record(std::string name, const Residual& r, double tolerance, bool gated,
                        std::string note = {});

/// Scalar residual wrapped as a Residual (|value| / max(1, scale)).
Residual scalar_residual(double lhs, double rhs, double scale);

}  // namespace qdeform
