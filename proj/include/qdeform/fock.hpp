#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "qdeform/matrix.hpp"
#include "qdeform/params.hpp"

namespace qdeform {

enum class Variant { GD, GChJ, GChJ_shifted, GHY_shifted };

std::string_view variant_name(Variant v);

/// Truncated ladder representation on rungs i = 0..dim-1. The physical label
/// of rung i is n = i*s; the number operator reads n + nu0 (GChJ_shifted),
/// n - nu0 (GHY_shifted) or n otherwise.
///
/// a+ maps the top rung to zero, so operator identities are compared on the
/// interior only. The GHY_shifted representation with nu0 != 0 is not a
/// lowest-weight one (a|0> would not vanish), so its bottom rung is a
/// truncation edge as well.
struct FockRep {
  Variant variant = Variant::GChJ;
  std::size_t dim = 1;
  double nu0 = 0.0;
  DeformationParams params;
  Matrix A;     // annihilator a
  Matrix Adag;  // creator a+
  Matrix Nop;   // number operator N (diagonal)

  /// Physical labels n = i*s of the rungs.
  std::vector<double> labels() const;
  /// Eigenvalues of N, i.e. the diagonal of Nop.
  std::vector<double> number_values() const { return Nop.diag(); }

  /// f(N) evaluated spectrally on the diagonal of Nop.
  Matrix number_function(const std::function<double(double)>& f) const {
    return diag_map(Nop, f);
  }

  /// Rungs whose identities are unaffected by truncation when up to
  /// `ladder_steps` raising steps act on them.
  InteriorMask interior(std::size_t ladder_steps = 1) const;

  bool has_lower_edge() const { return variant == Variant::GHY_shifted && nu0 != 0.0; }
};

/// Generalized Daskaloyannis form: a+a = [N], aa+ = [N+s]. Same matrices as build_gchj.
FockRep build_gd(const DeformationParams& params, std::size_t dim);

/// a|n> = sqrt([n]) |n-s>, a+|n> = sqrt([n+s]) |n+s>, N|n> = n|n>.
FockRep build_gchj(const DeformationParams& params, std::size_t dim);

/// GChJ amplitudes scaled by q^(gamma nu0 / 2) = Q^(nu0/2); N|n> = (n + nu0)|n>.
FockRep build_gchj_shifted(const DeformationParams& params, std::size_t dim, double nu0);

/// a+|n> = sqrt([n+s-nu0] + [nu0]) |n+s>, a|n> = sqrt([n-nu0] + [nu0]) |n-s>,
/// N|n> = (n - nu0)|n>.
FockRep build_ghy_shifted(const DeformationParams& params, std::size_t dim, double nu0);

/// Dispatches on `variant`; nu0 is ignored for the unshifted variants.
FockRep build_rep(Variant variant, const DeformationParams& params, std::size_t dim,
                  double nu0 = 0.0);

}  // namespace qdeform
