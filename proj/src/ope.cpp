#include "qdeform/ope.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "qdeform/error.hpp"

namespace qdeform {
namespace {

cplx ipow(cplx z, std::int64_t k) {
  if (k < 0) return 1.0 / ipow(z, -k);
  cplx out = 1.0;
  cplx base = z;
  while (k > 0) {
    if (k & 1) out *= base;
    base *= base;
    k >>= 1;
  }
  return out;
}

void require_denominator(const DeformationParams& pr) {
  if (pr.D() == 0.0 || !std::isfinite(pr.D())) {
    throw Error(ErrorCode::DenominatorZero, "p^(-l/gamma) - q^(l/alpha) vanishes");
  }
}

}  // namespace

cplx DeformedOPE::pole1(cplx w) const { return w * std::exp(h * params.log_P()); }
cplx DeformedOPE::pole2(cplx w) const { return w * std::exp(h * params.log_Q()); }
cplx DeformedOPE::residue1(cplx w) const { return phi.evaluate(w * params.P()) / (w * params.D()); }
cplx DeformedOPE::residue2(cplx w) const { return -phi.evaluate(w * params.Q()) / (w * params.D()); }

cplx DeformedOPE::operator()(cplx z, cplx w) const {
  return residue1(w) / (z - pole1(w)) + residue2(w) / (z - pole2(w));
}

LaurentPoly ope_residue_variation(const LaurentPoly& phi, std::int64_t n, double h,
                                  const DeformationParams& params) {
  require_denominator(params);
  const double lift = h * static_cast<double>(n + 1);
  LaurentPoly out;
  for (const auto& [k, c] : phi.terms()) {
    // z1^(n+1) phi(wP)/(wD) - z2^(n+1) phi(wQ)/(wD) collected on w^(n+k).
    const double x = lift + static_cast<double>(k);
    const double r1 = std::exp(x * params.log_P()) / params.D();
    const double r2 = std::exp(x * params.log_Q()) / params.D();
    out.add(n + k, c * r1 - c * r2);
  }
  return out;
}

cplx contour_integral_numeric(const ContourIntegrand& integrand, cplx center, double radius,
                              int points) {
  if (points < 64) throw Error(ErrorCode::InvalidArgument, "contour quadrature needs M >= 64");
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "contour radius must be positive");
  const double guard = 10.0 * std::numeric_limits<double>::epsilon() * radius;
  for (cplx pole : integrand.poles) {
    if (std::fabs(std::abs(pole - center) - radius) <= guard) {
      throw Error(ErrorCode::PoleOnContour, "a pole lies on the integration circle");
    }
  }
  cplx sum = 0.0;
  for (int j = 0; j < points; ++j) {
    const double t = 2.0 * std::numbers::pi * j / points;
    const cplx dz = radius * cplx(std::cos(t), std::sin(t));
    sum += integrand.f(center + dz) * dz;
  }
  return sum / static_cast<double>(points);
}

std::vector<Circle> variation_contours(const DeformedOPE& ope, std::int64_t n, cplx w) {
  const cplx z1 = ope.pole1(w), z2 = ope.pole2(w);
  const double gap = std::abs(z1 - z2);
  if (n + 1 >= 0) {
    return {{0.5 * (z1 + z2), std::max(gap, 0.5 * std::abs(w))}};
  }
  if (gap <= 1e-12 * std::abs(w)) return {{z1, 0.5 * std::abs(z1)}};
  return {{z1, 0.4 * std::min(gap, std::abs(z1))}, {z2, 0.4 * std::min(gap, std::abs(z2))}};
}

cplx ope_numeric_variation(const LaurentPoly& phi, std::int64_t n, double h,
                           const DeformationParams& params, cplx w, int points) {
  require_denominator(params);
  const DeformedOPE ope{h, phi, params};
  ContourIntegrand integrand;
  integrand.f = [&](cplx z) { return ipow(z, n + 1) * ope(z, w); };
  integrand.poles = {ope.pole1(w), ope.pole2(w)};
  if (n + 1 < 0) integrand.poles.push_back(0.0);
  cplx total = 0.0;
  for (const Circle& c : variation_contours(ope, n, w))
    total += contour_integral_numeric(integrand, c.center, c.radius, points);
  return total;
}

ModeBracketResult mode_bracket(std::int64_t n, std::int64_t m, double h,
                               const std::map<std::int64_t, cplx>& modes,
                               const DeformationParams& params) {
  require_denominator(params);
  ModeBracketResult r;
  r.n = n;
  r.m = m;
  r.h = h;
  r.weight_L_phi = std::exp(-(static_cast<double>(m) + h) * params.log_P() -
                            static_cast<double>(n + 2) * params.log_Q());
  r.weight_phi_L = std::exp(-static_cast<double>(n + 2) * params.log_P() -
                            (static_cast<double>(m) + h) * params.log_Q());
  r.expected_mode = n + m;
  const auto it = modes.find(n + m);
  const cplx target = it == modes.end() ? cplx{} : it->second;
  r.expected = bracket((h - 1.0) * static_cast<double>(n) - static_cast<double>(m), params) * target;

  for (const auto& [k, phik] : modes) {
    // Inner residues on phi_k w^(-k-h): phi_k (P^(hn-k) - Q^(hn-k))/D w^(n-k-h).
    const double x = h * static_cast<double>(n) - static_cast<double>(k);
    const double a = std::exp(x * params.log_P()) / params.D();
    const double b = std::exp(x * params.log_Q()) / params.D();
    r.scale = std::max(r.scale, std::abs(phik) * (std::fabs(a) + std::fabs(b)));
    // Divide out w^(-h); the outer integral of w^(m-1) w^(n-k) keeps the w^-1 term only.
    const std::int64_t power = m - 1 + n - k;
    if (power == -1) r.coefficients[k] = phik * a - phik * b;
  }
  return r;
}

double mode_bracket_deviation(const ModeBracketResult& r) {
  std::set<std::int64_t> keys{r.expected_mode};
  for (const auto& [k, c] : r.coefficients) keys.insert(k);
  double worst = 0.0;
  for (std::int64_t k : keys) {
    const auto it = r.coefficients.find(k);
    const cplx got = it == r.coefficients.end() ? cplx{} : it->second;
    const cplx want = k == r.expected_mode ? r.expected : cplx{};
    worst = std::max(worst, std::abs(got - want) / std::max(1.0, r.scale));
  }
  return worst;
}

VirasoroStructure virasoro_structure(std::int64_t n, std::int64_t m,
                                     const DeformationParams& params) {
  const double lp = params.log_P(), lq = params.log_Q();
  VirasoroStructure v;
  v.weight_nm = std::exp(-static_cast<double>(m + 2) * lp - static_cast<double>(n + 2) * lq);
  v.weight_mn = std::exp(-static_cast<double>(n + 2) * lp - static_cast<double>(m + 2) * lq);
  v.rhs = bracket(static_cast<double>(n - m), params);
  return v;
}

AntisymmetryScan virasoro_antisymmetry_scan(const DeformationParams& params, std::int64_t lo,
                                            std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty mode window");
  AntisymmetryScan scan;
  Residual worst = Residual::none();
  for (std::int64_t n = lo; n <= hi; ++n) {
    for (std::int64_t m = lo; m <= hi; ++m) {
      const double a = bracket(static_cast<double>(n - m), params);
      const double b = bracket(static_cast<double>(m - n), params);
      scan.rows.push_back({n, m, std::fabs(a + b)});
      worst.merge(scalar_residual(a, -b, std::fabs(a) + std::fabs(b)));
    }
  }
  scan.record = make_record("virasoro_antisym", worst, kDefaultTolerance, false);
  if (!worst.vacuous && worst.scaled > kDefaultTolerance) {
    scan.record.note = "max |[m-n] + [n-m]| over the window, PQ = " +
                       std::to_string(params.P() * params.Q());
  }
  return scan;
}

}  // namespace qdeform
