#include "qdeform/fock.hpp"

#include <cmath>
#include <sstream>

#include "qdeform/error.hpp"

namespace qdeform {
namespace {

void require_ladder(const DeformationParams& params) {
  if (!params.ladder_mode()) {
    throw Error(ErrorCode::NonIntegerStep, "Fock representations need ladder-mode parameters");
  }
}

void require_dim(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "representation dimension must be >= 1");
}

double checked_sqrt(double radicand, double label, std::string_view what) {
  if (!(radicand >= 0.0)) {
    std::ostringstream os;
    os << what << " radicand " << radicand << " at n = " << label << " is negative";
    throw Error(ErrorCode::NegativeStructureValue, os.str());
  }
  return std::sqrt(radicand);
}

// amplitude(n) = <n-s|a|n>, keyed by the upper rung label n.
template <typename Amplitude>
FockRep fill(Variant variant, const DeformationParams& params, std::size_t dim, double nu0,
             double number_offset, Amplitude amplitude) {
  FockRep rep;
  rep.variant = variant;
  rep.dim = dim;
  rep.nu0 = nu0;
  rep.params = params;
  rep.A = Matrix(dim, dim);
  rep.Adag = Matrix(dim, dim);
  rep.Nop = Matrix(dim, dim);
  const double s = params.s();
  for (std::size_t i = 0; i < dim; ++i) {
    rep.Nop(i, i) = static_cast<double>(i) * s + number_offset;
  }
  for (std::size_t i = 1; i < dim; ++i) {
    const double amp = amplitude(static_cast<double>(i) * s);
    rep.A(i - 1, i) = amp;
    rep.Adag(i, i - 1) = amp;
  }
  return rep;
}

}  // namespace

std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::GD: return "GD";
    case Variant::GChJ: return "GChJ";
    case Variant::GChJ_shifted: return "GChJ_shifted";
    case Variant::GHY_shifted: return "GHY_shifted";
  }
  return "unknown";
}

std::vector<double> FockRep::labels() const {
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) out[i] = static_cast<double>(i) * params.s();
  return out;
}

InteriorMask FockRep::interior(std::size_t ladder_steps) const {
  const auto top = static_cast<std::ptrdiff_t>(dim) - 1 - static_cast<std::ptrdiff_t>(ladder_steps);
  const std::ptrdiff_t bottom = has_lower_edge() ? static_cast<std::ptrdiff_t>(ladder_steps) : 0;
  return InteriorMask::range(dim, bottom, top);
}

FockRep build_gchj(const DeformationParams& params, std::size_t dim) {
  require_ladder(params);
  require_dim(dim);
  return fill(Variant::GChJ, params, dim, 0.0, 0.0, [&](double n) {
    return checked_sqrt(bracket(n, params), n, "[n]");
  });
}

FockRep build_gd(const DeformationParams& params, std::size_t dim) {
  FockRep rep = build_gchj(params, dim);
  rep.variant = Variant::GD;
  return rep;
}

FockRep build_gchj_shifted(const DeformationParams& params, std::size_t dim, double nu0) {
  require_ladder(params);
  require_dim(dim);
  const double scale = std::exp(0.5 * nu0 * params.log_Q());
  return fill(Variant::GChJ_shifted, params, dim, nu0, nu0, [&](double n) {
    return scale * checked_sqrt(bracket(n, params), n, "[n]");
  });
}

FockRep build_ghy_shifted(const DeformationParams& params, std::size_t dim, double nu0) {
  require_ladder(params);
  require_dim(dim);
  const double shift = bracket(nu0, params);
  return fill(Variant::GHY_shifted, params, dim, nu0, -nu0, [&](double n) {
    return checked_sqrt(bracket(n - nu0, params) + shift, n, "[n-nu0]+[nu0]");
  });
}

FockRep build_rep(Variant variant, const DeformationParams& params, std::size_t dim, double nu0) {
  switch (variant) {
    case Variant::GD: return build_gd(params, dim);
    case Variant::GChJ: return build_gchj(params, dim);
    case Variant::GChJ_shifted: return build_gchj_shifted(params, dim, nu0);
    case Variant::GHY_shifted: return build_ghy_shifted(params, dim, nu0);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown variant");
}

}  // namespace qdeform
