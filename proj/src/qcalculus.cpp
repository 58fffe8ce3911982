#include "qdeform/qcalculus.hpp"

#include <cmath>
#include <map>

#include "qdeform/error.hpp"

namespace qdeform {

LaurentPoly deformed_derivative(const LaurentPoly& phi, const DeformationParams& params) {
  LaurentPoly out;
  for (const auto& [k, c] : phi.terms()) out.add(k - 1, c * bracket(static_cast<double>(k), params));
  return out;
}

cplx deformed_derivative_at(const LaurentPoly& phi, cplx z, const DeformationParams& params) {
  if (z == cplx{}) throw Error(ErrorCode::OriginArgument, "difference quotient at z = 0");
  return (phi.evaluate(params.P() * z) - phi.evaluate(params.Q() * z)) / (z * params.D());
}

LaurentPoly delta_n(const LaurentPoly& phi, std::int64_t n, double h,
                    const DeformationParams& params) {
  const double shift = h * static_cast<double>(n + 1);
  LaurentPoly out;
  for (const auto& [k, c] : phi.terms())
    out.add(n + k, c * bracket(static_cast<double>(k) + shift, params));
  return out;
}

LaurentPoly general_variation(const LaurentPoly& phi, const LaurentPoly& eps, double h,
                              const DeformationParams& params) {
  if (eps.is_zero()) return {};
  if (eps.size() != 1) {
    throw Error(ErrorCode::NonMonomialEpsilon, "eps must be a single monomial eps_n z^(n+1)");
  }
  const auto [e, eps_n] = *eps.terms().begin();
  const double lift = static_cast<double>(e) * h;

  // eps^h phi carries real exponents k + (n+1)h.
  std::map<double, cplx> lifted;
  const cplx eh = std::pow(eps_n, h);
  for (const auto& [k, c] : phi.terms()) lifted[static_cast<double>(k) + lift] += eh * c;

  // D on z^x gives [x] z^(x-1); eps^(1-h) multiplies by eps_n^(1-h) z^((n+1)(1-h)).
  const cplx e1h = std::pow(eps_n, 1.0 - h);
  const double drop = static_cast<double>(e) * (1.0 - h) - 1.0;
  LaurentPoly out;
  for (const auto& [x, c] : lifted) {
    const double y = x + drop;
    const double k = std::round(y);
    if (std::fabs(y - k) > 1e-9 * std::max(1.0, std::fabs(y))) {
      throw Error(ErrorCode::InvalidArgument, "non-integer exponent in variation result");
    }
    out.add(static_cast<std::int64_t>(k), e1h * c * bracket(x, params));
  }
  return out;
}

}  // namespace qdeform
