#include "qdeform/correlators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qdeform/error.hpp"

namespace qdeform {
namespace {

constexpr std::size_t kMaxTerms = 10'000'000;
constexpr double kZeroGuard = 1e-3;

void require_contractive(double r) {
  if (!(std::fabs(r) < 1.0)) {
    throw Error(ErrorCode::BaseNotContractive, "infinite product needs |r| < 1, got r = " +
                                                   std::to_string(r));
  }
}

// Sum over j >= T of |log(1 - x r^j)|, valid once |x||r|^T < 1.
double tail_estimate(double ax, double ar, std::size_t T) {
  const double t = ax * std::pow(ar, static_cast<double>(T));
  if (!(t < 1.0)) return std::numeric_limits<double>::infinity();
  return t / ((1.0 - ar) * (1.0 - t));
}

// Whether z comes within kZeroGuard of a zero of (z; r)_inf.
bool near_product_zero(cplx z, double r) {
  cplx y = z;
  for (std::size_t j = 0; j < kMaxTerms && std::abs(y) > 0.5; ++j) {
    if (std::abs(1.0 - y) < kZeroGuard) return true;
    y *= r;
  }
  return false;
}

Residual complex_residual(cplx diff, double scale) { return scalar_residual(std::abs(diff), 0.0, scale); }

}  // namespace

QPochhammer qpochhammer(cplx x, double r, double rel_tol) {
  require_contractive(r);
  QPochhammer out{x, r, 0, 1.0, 0.0};
  const double ax = std::abs(x), ar = std::fabs(r);
  cplx y = x;
  while (true) {
    const cplx factor = 1.0 - y;
    if (factor == 0.0) {
      out.value = 0.0;
      out.tail_bound = 0.0;
      ++out.terms;
      return out;
    }
    out.value *= factor;
    ++out.terms;
    y *= r;
    out.tail_bound = tail_estimate(ax, ar, out.terms);
    if (out.tail_bound < rel_tol) return out;
    if (out.terms >= kMaxTerms) {
      throw Error(ErrorCode::InvalidArgument, "q-Pochhammer truncation limit reached");
    }
  }
}

QPochhammer qpochhammer_truncated(cplx x, double r, std::size_t terms) {
  require_contractive(r);
  QPochhammer out{x, r, terms, 1.0, 0.0};
  cplx y = x;
  for (std::size_t j = 0; j < terms; ++j) {
    out.value *= 1.0 - y;
    y *= r;
  }
  out.tail_bound = tail_estimate(std::abs(x), std::fabs(r), terms);
  return out;
}

cplx h_a(cplx z, cplx a, double r) {
  const QPochhammer den = qpochhammer(z, r);
  if (den.value == 0.0) throw Error(ErrorCode::DenominatorZero, "(z; r)_inf vanishes");
  return qpochhammer(a * z, r).value / den.value;
}

double h_a_functional_residual(cplx z, cplx a, double r) {
  const cplx lhs = h_a(z, a, r);
  const cplx rhs = (1.0 - a * z) / (1.0 - z) * h_a(r * z, a, r);
  return std::abs(lhs - rhs) / std::max(std::abs(lhs), std::numeric_limits<double>::min());
}

double correlator_base(const DeformationParams& params) {
  const double r = std::exp(params.log_Q() - params.log_P());
  require_contractive(r);
  return r;
}

cplx two_point_ansatz(cplx z1, cplx z2, double h, double omega, const DeformationParams& params) {
  if (z1 == 0.0) throw Error(ErrorCode::OriginArgument, "two-point function needs z1 != 0");
  const double r = correlator_base(params);
  const double a = std::pow(r, 2.0 * h);
  const cplx x = std::pow(r, -h) * z2 / z1;
  return std::pow(z1, omega) * h_a(x, a, r);
}

cplx two_point(cplx z1, cplx z2, double h, const DeformationParams& params) {
  return two_point_ansatz(z1, z2, h, -2.0 * h, params);
}

std::vector<WardSample> default_ward_samples() {
  std::vector<WardSample> out;
  for (cplx z1 : {cplx(1.0, 0.0), cplx(1.5, 0.5)})
    for (cplx u : {cplx(0.1, 0.0), cplx(0.3, 0.0), cplx(0.5, 0.2), cplx(0.5, -0.2)})
      out.push_back({z1, u * z1});
  return out;
}

std::vector<CheckRecord> ward_residual(double h1, double h2, const DeformationParams& params,
                                       std::span<const WardSample> samples, double omega,
                                       double tol) {
  const double r = correlator_base(params);
  const double P = params.P(), Q = params.Q();
  const double Pw = std::pow(P, omega), Qw = std::pow(Q, omega);
  const double a = std::pow(r, 2.0 * h1);
  const double Ph1 = std::pow(P, h1), Qh2 = std::pow(Q, h2);
  auto G = [&](cplx z1, cplx z2) { return two_point_ansatz(z1, z2, h1, omega, params); };

  Residual c1 = Residual::none(), c1_reduced = Residual::none();
  Residual c2_literal = Residual::none(), c2_derived = Residual::none();
  Residual c4 = Residual::none(), c4_literal = Residual::none();
  Residual c5 = Residual::none(), c6 = Residual::none(), c6_literal = Residual::none();
  std::size_t skipped = 0;

  for (const WardSample& smp : samples) {
    const cplx z1 = smp.z1, z2 = smp.z2;
    const cplx x = std::pow(r, -h1) * z2 / z1;
    if (near_product_zero(x, r) || near_product_zero(r * x, r)) {
      ++skipped;
      continue;
    }
    const cplx g0 = G(z1, z2);
    const cplx gPP = G(P * z1, P * z2), gPQ = G(P * z1, Q * z2), gQQ = G(Q * z1, Q * z2);

    // Delta(K_-1) = M (x) K_-1 + K_-1 (x) N, common factor 1/D dropped.
    const cplx t1 = Ph1 / z2 * (gPP - gPQ), t2 = Qh2 / z1 * (gPQ - gQQ);
    c1.merge(complex_residual(t1 + t2, std::abs(Ph1 / z2) * (std::abs(gPP) + std::abs(gPQ)) +
                                           std::abs(Qh2 / z1) * (std::abs(gPQ) + std::abs(gQQ))));
    const cplx w = std::pow(r, -h1) / (z2 / z1);
    c1_reduced.merge(complex_residual((1.0 - w) * gPQ + w * gPP - gQQ,
                                      std::abs(1.0 - w) * std::abs(gPQ) + std::abs(w * gPP) +
                                          std::abs(gQQ)));

    // Delta(K_+1), derived and literal weights.
    auto kplus = [&](double wPQ_first, double wQQ) {
      const cplx u1 = Ph1 * z2 * (std::pow(P, 2.0 * h2) * gPP - wPQ_first * gPQ);
      const cplx u2 = Qh2 * z1 * (std::pow(P, 2.0 * h1) * gPQ - wQQ * gQQ);
      const double scale =
          std::abs(Ph1 * z2) * (std::pow(P, 2.0 * h2) * std::abs(gPP) + wPQ_first * std::abs(gPQ)) +
          std::abs(Qh2 * z1) * (std::pow(P, 2.0 * h1) * std::abs(gPQ) + wQQ * std::abs(gQQ));
      return complex_residual(u1 + u2, scale);
    };
    c2_derived.merge(kplus(std::pow(Q, 2.0 * h2), std::pow(Q, 2.0 * h1)));
    c2_literal.merge(kplus(std::pow(Q, -2.0 * h2), std::pow(Q, 2.0 * h2)));

    const cplx f4 = (1.0 - x) / (1.0 - a * x);
    c4.merge(complex_residual(gPQ - Pw * f4 * g0, std::abs(gPQ) + std::abs(Pw * f4 * g0)));
    c4_literal.merge(complex_residual(gPQ - Pw * g0, std::abs(gPQ) + std::abs(Pw * g0)));
    c5.merge(complex_residual(gPP - Pw * g0, std::abs(gPP) + std::abs(Pw * g0)));
    c6.merge(complex_residual(gQQ - Qw * g0, std::abs(gQQ) + std::abs(Qw * g0)));
    const double qaw = std::exp(params.alpha() * omega * std::log(params.q()));
    c6_literal.merge(complex_residual(gQQ - qaw * g0, std::abs(gQQ) + std::abs(qaw * g0)));
  }

  const std::string skip_note =
      skipped ? "skipped " + std::to_string(skipped) + " samples near product zeros" : "";
  auto join = [&](std::string note) {
    if (skip_note.empty()) return note;
    return note.empty() ? skip_note : note + "; " + skip_note;
  };
  const bool equal_weights = h1 == h2;

  std::vector<CheckRecord> out;
  out.push_back(make_record("corr1", c1, tol, equal_weights,
                            join(equal_weights ? "" : "unequal weights: residual surface only")));
  out.back().extras.push_back({"reduced_form", c1_reduced.scaled});
  out.push_back(make_record("corr2", c2_literal, tol, false,
                            join("literal weights q^(-2 gamma h2), q^(2 gamma h2); derived_form "
                                 "uses q^(2 gamma h2), q^(2 gamma h1)")));
  out.back().extras.push_back({"derived_form", c2_derived.scaled});
  out.push_back(make_record("corr4", c4, tol, true,
                            join("factor (1-x)/(1-ax) from the functional equation; "
                                 "literal_factor uses 1")));
  out.back().extras.push_back({"literal_factor", c4_literal.scaled});
  out.push_back(make_record("corr5", c5, tol, true, join("")));
  out.push_back(make_record("corr6", c6, tol, true,
                            join("factor q^(gamma omega); literal_exponent uses q^(alpha omega)")));
  out.back().extras.push_back({"literal_exponent", c6_literal.scaled});
  return out;
}

OmegaScan omega_scan(double h, const DeformationParams& params,
                     std::span<const WardSample> samples, std::span<const double> omegas) {
  if (omegas.empty()) throw Error(ErrorCode::InvalidArgument, "empty omega list");
  OmegaScan scan;
  double best = std::numeric_limits<double>::infinity();
  for (double omega : omegas) {
    const double res = ward_residual(h, h, params, samples, omega).front().residual.scaled;
    scan.rows.push_back({omega, res});
    if (res < best) {
      best = res;
      scan.best_omega = omega;
    }
  }
  return scan;
}

std::vector<DeformationParams> correlator_classical_path(std::span<const double> deltas) {
  std::vector<DeformationParams> out;
  for (double d : deltas) out.push_back(DeformationParams::validate(1 - d, 1 - d, 1, 1, 1, false));
  return out;
}

ConvergenceReport correlator_classical_limit(std::span<const DeformationParams> path, double h,
                                             cplx z1, cplx z2) {
  const cplx classical = std::pow(z1, -2.0 * h) * std::pow(1.0 - z2 / z1, -2.0 * h);
  return track_convergence(path, [&](const DeformationParams& pr) {
    return std::abs(two_point(z1, z2, h, pr) - classical) / std::abs(classical);
  });
}

}  // namespace qdeform
