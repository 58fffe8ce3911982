#include "qdeform/check.hpp"

#include <algorithm>
#include <cmath>

namespace qdeform {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Vacuous: return "vacuous";
    case Verdict::DocumentedDiscrepancy: return "documented-discrepancy";
  }
  return "unknown";
}

Verdict judge(const Residual& r, double tolerance, bool gated) {
  if (r.vacuous) return Verdict::Vacuous;
  if (std::isnan(r.scaled)) return Verdict::Fail;
  if (r.scaled <= tolerance) return Verdict::Pass;
  return gated ? Verdict::Fail : Verdict::DocumentedDiscrepancy;
}

}  // namespace qdeform

namespace qdeform {

CheckRecord make_record(std::string name, const Residual& r, double tolerance, bool gated,
                        std::string note) {
  CheckRecord c;
  c.name = std::move(name);
  c.residual = r;
  c.tolerance = tolerance;
  c.gated = gated;
  c.verdict = judge(r, tolerance, gated);
  c.note = std::move(note);
  if (c.verdict == Verdict::Vacuous) c.note = c.note.empty() ? "vacuous" : "vacuous; " + c.note;
  return c;
}

Residual scalar_residual(double lhs, double rhs, double scale) {
  Residual r;
  r.absolute = std::fabs(lhs - rhs);
  r.scale = std::fabs(scale);
  r.scaled = std::isnan(r.absolute) ? r.absolute : r.absolute / std::max(1.0, r.scale);
  return r;
}

}  // namespace qdeform
