#pragma once

#include <cstdint>

#include "qdeform/laurent.hpp"
#include "qdeform/params.hpp"

namespace qdeform {

/// D phi(z) = (phi(P z) - phi(Q z)) / (z (P^s - Q^s)); on monomials z^k -> [k] z^(k-1).
LaurentPoly deformed_derivative(const LaurentPoly& phi, const DeformationParams& params);

/// The same operator evaluated pointwise from its difference-quotient definition.
cplx deformed_derivative_at(const LaurentPoly& phi, cplx z, const DeformationParams& params);

/// delta_n phi = z^n [z d/dz + h(n+1)] phi; on monomials z^k -> [k + h(n+1)] z^(n+k).
LaurentPoly delta_n(const LaurentPoly& phi, std::int64_t n, double h,
                    const DeformationParams& params);

/// eps^(1-h) D[eps^h phi] for a single-monomial eps = eps_n z^(n+1). Powers of
/// eps use the principal branch; the zero polynomial gives zero.
/// Throws Error{NonMonomialEpsilon} if eps has more than one term.
LaurentPoly general_variation(const LaurentPoly& phi, const LaurentPoly& eps, double h,
                              const DeformationParams& params);

}  // namespace qdeform
