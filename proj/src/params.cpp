#include "qdeform/params.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qdeform/error.hpp"

namespace qdeform {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveBase: return "NonPositiveBase";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::NonIntegerStep: return "NonIntegerStep";
    case ErrorCode::NegativeStructureValue: return "NegativeStructureValue";
    case ErrorCode::WrongVariant: return "WrongVariant";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::NonMonomialEpsilon: return "NonMonomialEpsilon";
    case ErrorCode::PoleOnContour: return "PoleOnContour";
    case ErrorCode::BaseNotContractive: return "BaseNotContractive";
    case ErrorCode::DenominatorZero: return "DenominatorZero";
    case ErrorCode::OriginArgument: return "OriginArgument";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool rel_close(double a, double b, double tol, double scale) {
  const double mag = std::max({std::fabs(a), std::fabs(b), std::fabs(scale)});
  return std::fabs(a - b) <= std::max(tol * mag, kAbsFloor);
}

DeformationParams DeformationParams::validate(const RawParams& raw, bool ladder_mode) {
  if (!(raw.p > 0.0) || !(raw.q > 0.0) || !std::isfinite(raw.p) || !std::isfinite(raw.q)) {
    std::ostringstream os;
    os << "p and q must be positive (p=" << raw.p << ", q=" << raw.q << ")";
    throw Error(ErrorCode::NonPositiveBase, os.str());
  }
  if (raw.alpha == 0.0 || raw.gamma == 0.0 || raw.l == 0.0 || !std::isfinite(raw.alpha) ||
      !std::isfinite(raw.gamma) || !std::isfinite(raw.l)) {
    throw Error(ErrorCode::ZeroExponent, "alpha, gamma and l must be finite and nonzero");
  }

  DeformationParams out;
  out.raw_ = raw;
  out.ladder_ = ladder_mode;
  out.log_P_ = -raw.alpha * std::log(raw.p);
  out.log_Q_ = raw.gamma * std::log(raw.q);
  out.P_ = std::pow(raw.p, -raw.alpha);
  out.Q_ = std::pow(raw.q, raw.gamma);
  out.s_ = raw.l / (raw.alpha * raw.gamma);
  out.D_ = std::pow(raw.p, -raw.l / raw.gamma) - std::pow(raw.q, raw.l / raw.alpha);

  if (ladder_mode) {
    const double nearest = std::round(out.s_);
    if (std::fabs(out.s_ - nearest) > kStepSnapTol || nearest < 1.0) {
      std::ostringstream os;
      os << "ladder step l/(alpha*gamma) = " << out.s_ << " is not a positive integer";
      throw Error(ErrorCode::NonIntegerStep, os.str());
    }
    out.s_ = nearest;
    out.step_ = static_cast<std::int64_t>(nearest);
  } else {
    out.step_ = static_cast<std::int64_t>(std::llround(out.s_));
  }
  return out;
}

bool DeformationParams::degenerate() const { return std::fabs(P_ - Q_) < kDegenerateEps; }

bool DeformationParams::operator==(const DeformationParams& o) const {
  return raw_.p == o.raw_.p && raw_.q == o.raw_.q && raw_.alpha == o.raw_.alpha &&
         raw_.gamma == o.raw_.gamma && raw_.l == o.raw_.l && ladder_ == o.ladder_;
}

double bracket(double x, const DeformationParams& params, double eps_degenerate) {
  const double s = params.s();
  if (std::fabs(params.P() - params.Q()) < eps_degenerate) {
    return (x / s) * std::exp((x - s) * params.log_P());
  }
  const double d = params.log_P() - params.log_Q();
  return std::exp((x - s) * params.log_Q()) * std::expm1(x * d) / std::expm1(s * d);
}

double bracket_factorial(std::int64_t n, const DeformationParams& params) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "bracket_factorial needs n >= 0");
  double out = 1.0;
  for (std::int64_t k = n; k >= 1; --k) {
    out *= bracket(static_cast<double>(k), params);
  }
  return out;
}

ConvergenceReport classical_limit_check(double x, std::span<const DeformationParams> path) {
  ConvergenceReport rep;
  rep.x = x;
  rep.monotone = true;
  for (const auto& params : path) {
    const double limit = classical_bracket(x, params);
    const double value = bracket(x, params);
    const double residual = std::fabs(value - limit);
    if (!rep.points.empty() && residual > rep.points.back().residual) rep.monotone = false;
    rep.limit = limit;
    rep.points.push_back({params.p(), params.q(), value, residual});
  }
  rep.final_residual = rep.points.empty() ? 0.0 : rep.points.back().residual;
  return rep;
}

ConvergenceReport track_convergence(std::span<const DeformationParams> path,
                                    const std::function<double(const DeformationParams&)>& residual) {
  ConvergenceReport rep;
  rep.monotone = true;
  for (const auto& params : path) {
    const double r = residual(params);
    if (!rep.points.empty() && !(r <= rep.points.back().residual)) rep.monotone = false;
    rep.points.push_back({params.p(), params.q(), r, r});
  }
  rep.final_residual = rep.points.empty() ? 0.0 : rep.points.back().residual;
  return rep;
}

std::vector<DeformationParams> classical_path(double alpha, double gamma, double l, int k_first,
                                              int k_last, bool ladder_mode) {
  std::vector<DeformationParams> path;
  for (int k = k_first; k <= k_last; ++k) {
    const double p = 1.0 + std::pow(10.0, -k);
    path.push_back(DeformationParams::validate(p, p, alpha, gamma, l, ladder_mode));
  }
  return path;
}

std::string_view specialization_name(SpecializationTag tag) {
  switch (tag) {
    case SpecializationTag::ArikCoon: return "ArikCoon";
    case SpecializationTag::BiedenharnMacfarlane: return "BiedenharnMacfarlane";
    case SpecializationTag::ChakrabartiJagannathan: return "ChakrabartiJagannathan";
    case SpecializationTag::Classical: return "Classical";
  }
  return "Unknown";
}

Specialization make_specialization(SpecializationTag tag) {
  switch (tag) {
    case SpecializationTag::ArikCoon:
      return {tag, [](double, double q) {
                return DeformationParams::validate(1.0, q, 1.0, 1.0, 1.0, true);
              }};
    case SpecializationTag::BiedenharnMacfarlane:
      return {tag, [](double, double q) {
                return DeformationParams::validate(q, q, 1.0, 1.0, 1.0, true);
              }};
    case SpecializationTag::ChakrabartiJagannathan:
      return {tag, [](double p, double q) {
                return DeformationParams::validate(p, q, 1.0, 1.0, 1.0, true);
              }};
    case SpecializationTag::Classical:
      return {tag, [](double, double) {
                return DeformationParams::validate(1.0, 1.0, 1.0, 1.0, 1.0, true);
              }};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown specialization");
}

}  // namespace qdeform
