#include "qdeform/relations.hpp"

#include <cmath>
#include <cstdio>

#include "qdeform/error.hpp"

namespace qdeform {
namespace {

struct Ops {
  const FockRep& rep;
  const DeformationParams& pr;
  Tracked a, ad, N;
  InteriorMask mask;

  explicit Ops(const FockRep& r)
      : rep(r), pr(r.params), a(r.A), ad(r.Adag), N(r.Nop), mask(r.interior(1)) {}

  double Pp(double x) const { return std::exp(x * pr.log_P()); }
  double Qp(double x) const { return std::exp(x * pr.log_Q()); }

  template <typename F>
  Tracked f(F fn) const {
    return Tracked(rep.number_function(fn));
  }
  Tracked br(double shift) const {
    return f([&](double x) { return bracket(x + shift, pr); });
  }
  Tracked zero() const { return Tracked(Matrix(rep.dim, rep.dim)); }
  Tracked ident(double c) const { return Tracked(c * Matrix::identity(rep.dim)); }

  Tracked ada() const { return ad * a; }
  Tracked aad() const { return a * ad; }

  Residual cmp(const Tracked& l, const Tracked& r) const { return interior_residual(l, r, mask); }

  Tracked c1() const {
    return f([&](double x) { return Pp(-x); }) * (br(0) - ada());
  }
  Tracked c2() const {
    const double lw = pr.log_P() + pr.log_Q();
    return f([&](double x) { return std::exp(-x * lw); }) * (br(0) - ada());
  }
  Residual commutes(const Tracked& c) const {
    Residual r = cmp(c * a - a * c, zero());
    r.merge(cmp(c * ad - ad * c, zero()));
    r.merge(cmp(c * N - N * c, zero()));
    return r;
  }
};

bool plain(const FockRep& rep) {
  return rep.variant == Variant::GD || rep.variant == Variant::GChJ || rep.nu0 == 0.0;
}

bool expected_to_hold(RelationId id, const FockRep& rep) {
  if (plain(rep)) return true;
  if (rep.variant == Variant::GChJ_shifted) {
    switch (id) {
      case RelationId::GChJ_8:
      case RelationId::NumberComm:
      case RelationId::C1_commutes:
      case RelationId::C1_eigenvalue_18:
      case RelationId::Imply_19_20:
      case RelationId::Imply_26: return true;
      default: return false;
    }
  }
  return id == RelationId::NumberComm || id == RelationId::C2_eigenvalue;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void require(bool ok, RelationId id, const FockRep& rep) {
  if (!ok) {
    throw Error(ErrorCode::WrongVariant, std::string(relation_name(id)) + " is not defined on " +
                                             std::string(variant_name(rep.variant)));
  }
}

}  // namespace

std::string_view relation_name(RelationId id) {
  switch (id) {
    case RelationId::GD_7: return "GD_7";
    case RelationId::GChJ_8: return "GChJ_8";
    case RelationId::GChJ_9: return "GChJ_9";
    case RelationId::GHY_12: return "GHY_12";
    case RelationId::GHY_13: return "GHY_13";
    case RelationId::NumberComm: return "NumberComm";
    case RelationId::C1_commutes: return "C1_commutes";
    case RelationId::C1_eigenvalue_18: return "C1_eigenvalue_18";
    case RelationId::C2_commutes: return "C2_commutes";
    case RelationId::C2_eigenvalue: return "C2_eigenvalue";
    case RelationId::Imply_15: return "Imply_15";
    case RelationId::Imply_19_20: return "Imply_19_20";
    case RelationId::Imply_26: return "Imply_26";
    case RelationId::Imply_27_28: return "Imply_27_28";
  }
  return "unknown";
}

std::optional<RelationId> parse_relation(std::string_view name) {
  for (RelationId id : kAllRelations)
    if (relation_name(id) == name) return id;
  return std::nullopt;
}

bool is_implication(RelationId id) {
  return id == RelationId::Imply_15 || id == RelationId::Imply_19_20 ||
         id == RelationId::Imply_26 || id == RelationId::Imply_27_28;
}

bool relation_applicable(RelationId id, const FockRep& rep) {
  const Variant v = rep.variant;
  switch (id) {
    case RelationId::C1_commutes:
    case RelationId::C1_eigenvalue_18:
    case RelationId::Imply_19_20:
    case RelationId::Imply_26: return v != Variant::GHY_shifted;
    case RelationId::C2_commutes:
    case RelationId::C2_eigenvalue:
    case RelationId::Imply_27_28: return v == Variant::GHY_shifted || v == Variant::GD;
    case RelationId::Imply_15: return plain(rep);
    default: return true;
  }
}

Variant implication_variant(RelationId which) {
  switch (which) {
    case RelationId::Imply_15: return Variant::GD;
    case RelationId::Imply_19_20:
    case RelationId::Imply_26: return Variant::GChJ_shifted;
    case RelationId::Imply_27_28: return Variant::GHY_shifted;
    default: throw Error(ErrorCode::InvalidArgument, "not an implication experiment");
  }
}

Matrix casimir_c1(const FockRep& rep) {
  require(relation_applicable(RelationId::C1_commutes, rep), RelationId::C1_commutes, rep);
  return Ops(rep).c1().value;
}

Matrix casimir_c2(const FockRep& rep) {
  require(relation_applicable(RelationId::C2_commutes, rep), RelationId::C2_commutes, rep);
  return Ops(rep).c2().value;
}

double c1_eigenvalue(const FockRep& rep) {
  if (rep.variant != Variant::GChJ_shifted) return 0.0;
  return std::exp(-rep.nu0 * rep.params.log_P()) * bracket(rep.nu0, rep.params);
}

std::vector<double> c2_eigenvalues(const FockRep& rep) {
  std::vector<double> out = rep.number_values();
  const double lw = rep.params.log_P() + rep.params.log_Q();
  const double b = rep.variant == Variant::GHY_shifted ? bracket(rep.nu0, rep.params) : 0.0;
  for (double& x : out) x = -std::exp(-x * lw) * b;
  return out;
}

ResidualReport check_relation(const FockRep& rep, RelationId relation, double tol) {
  require(relation_applicable(relation, rep), relation, rep);
  const Ops o(rep);
  const auto& pr = rep.params;
  const double s = pr.s();
  const double Ps = o.Pp(s), Qs = o.Qp(s);
  const double PQs = Ps * Qs;

  ResidualReport out;
  out.relation = relation;
  out.params = pr;
  out.variant = rep.variant;
  out.dim = rep.dim;
  out.nu0 = rep.nu0;
  out.tolerance = tol;
  out.gated = expected_to_hold(relation, rep);

  Residual res = Residual::none();
  switch (relation) {
    case RelationId::GD_7:
      res.merge(o.cmp(o.ada(), o.br(0)));
      res.merge(o.cmp(o.aad(), o.br(s)));
      break;
    case RelationId::GChJ_8:
      res = o.cmp(o.aad() - Ps * o.ada(), o.f([&](double x) { return o.Qp(x); }));
      break;
    case RelationId::GChJ_9:
      res = o.cmp(o.aad() - Qs * o.ada(), o.f([&](double x) { return o.Pp(x); }));
      break;
    case RelationId::GHY_12: {
      const double den = o.Pp(s / 2) + o.Qp(s / 2);
      res = o.cmp(o.aad() - std::sqrt(PQs) * o.ada(),
                  o.f([&](double x) { return (o.Pp(x + s / 2) + o.Qp(x + s / 2)) / den; }));
      break;
    }
    case RelationId::GHY_13:
      res = o.cmp(o.aad() - PQs * o.ada(), o.br(s) - PQs * o.br(0));
      break;
    case RelationId::NumberComm:
      res = o.cmp(o.N * o.a - o.a * o.N, -s * o.a);
      res.merge(o.cmp(o.N * o.ad - o.ad * o.N, s * o.ad));
      break;
    case RelationId::C1_commutes: res = o.commutes(o.c1()); break;
    case RelationId::C1_eigenvalue_18: {
      const double c = c1_eigenvalue(rep);
      res = o.cmp(o.c1(), o.ident(c));
      out.note = "constant p^(alpha nu0)[nu0] = " + fmt(c);
      break;
    }
    case RelationId::C2_commutes: res = o.commutes(o.c2()); break;
    case RelationId::C2_eigenvalue: {
      const auto derived = c2_eigenvalues(rep);
      res = o.cmp(o.c2(), Tracked(Matrix::diagonal(derived)));
      // Alternative closed form (PQ)^-n [nu0] keyed by the rung label n.
      std::vector<double> alt = rep.labels();
      const double lw = pr.log_P() + pr.log_Q();
      const double b = rep.variant == Variant::GHY_shifted ? bracket(rep.nu0, pr) : 0.0;
      for (double& n : alt) n = std::exp(-n * lw) * b;
      const Residual ra = o.cmp(o.c2(), Tracked(Matrix::diagonal(alt)));
      out.extras.push_back({"literal_form", ra.scaled});
      out.note = "derived -(p^alpha q^-gamma)^(n-nu0)[nu0]; literal (p^alpha q^-gamma)^n[nu0] residual " +
                 fmt(ra.scaled);
      break;
    }
    case RelationId::Imply_15: {
      // GD values substituted into both GChJ forms.
      res = o.cmp(o.br(s) - Qs * o.br(0), o.f([&](double x) { return o.Pp(x); }));
      res.merge(o.cmp(o.br(s) - Ps * o.br(0), o.f([&](double x) { return o.Qp(x); })));
      res.merge(o.cmp(o.aad() - Qs * o.ada(), o.f([&](double x) { return o.Pp(x); })));
      res.merge(o.cmp(o.aad() - Ps * o.ada(), o.f([&](double x) { return o.Qp(x); })));
      const Residual sum = o.cmp(o.br(s) + o.br(0), o.f([&](double x) { return o.Pp(x); }));
      out.extras.push_back({"sum_form", sum.scaled});
      out.note = "[N+s] - q^(l/alpha)[N] = p^(-alpha N); the sum [N+s] + [N] gives residual " +
                 fmt(sum.scaled);
      break;
    }
    case RelationId::Imply_19_20: {
      const Tracked c1 = o.c1();
      res = o.cmp(o.ada(), o.br(0) - o.f([&](double x) { return o.Pp(x); }) * c1);
      res.merge(o.cmp(o.aad(), o.br(s) - o.f([&](double x) { return o.Pp(x + s); }) * c1));
      break;
    }
    case RelationId::Imply_26: {
      const Tracked c1 = o.c1();
      const Tracked lhs = o.aad() - PQs * o.ada();
      const Tracked base = o.br(s) - PQs * o.br(0);
      const Tracked corr = (1.0 - Qs) * (o.f([&](double x) { return o.Pp(x + s); }) * c1);
      res = o.cmp(lhs, base - corr);
      const double lp = std::log(pr.p());
      const Tracked lit =
          (1.0 - Qs) * (o.f([&](double x) { return std::exp((-pr.alpha() * x + s) * lp); }) * c1);
      const Residual omitted = o.cmp(lhs, base);
      const Residual literal = o.cmp(lhs, base - lit);
      out.extras.push_back({"without_correction", omitted.scaled});
      out.extras.push_back({"literal_correction", literal.scaled});
      out.note = "correction -P^(N+s)(1-q^(l/alpha))C1; without it " + fmt(omitted.scaled) +
                 ", with p^(-alpha N+s) " + fmt(literal.scaled);
      break;
    }
    case RelationId::Imply_27_28: {
      const Tracked c2 = o.c2();
      const double lw = pr.log_P() + pr.log_Q();
      const Tracked w = o.f([&](double x) { return std::exp(x * lw); }) * c2;
      const Tracked lhs27 = o.aad() - Ps * o.ada();
      const Tracked lhs28 = o.aad() - Qs * o.ada();
      res = o.cmp(lhs27, o.br(s) - Ps * o.br(0) + (Ps * (1.0 - Qs)) * w);
      res.merge(o.cmp(lhs28, o.br(s) - Qs * o.br(0) + (Qs * (1.0 - Ps)) * w));
      // Alternative coefficients: p^(-l/alpha) on [N] in the first, q^(-l/alpha)(1 - p^gamma)
      // on the C2 term in the second.
      const double c27 = std::pow(pr.p(), -pr.l() / pr.alpha());
      const double c28 = std::pow(pr.q(), -pr.l() / pr.alpha()) * (1.0 - std::pow(pr.p(), pr.gamma()));
      const Residual a27 = o.cmp(lhs27, o.br(s) - c27 * o.br(0) + (Ps * (1.0 - Qs)) * w);
      const Residual a28 = o.cmp(lhs28, o.br(s) - Qs * o.br(0) + c28 * w);
      out.extras.push_back({"literal_27", a27.scaled});
      out.extras.push_back({"literal_28", a28.scaled});
      out.note = "literal coefficients give residuals " + fmt(a27.scaled) + " and " +
                 fmt(a28.scaled);
      break;
    }
  }

  if (!out.gated && out.note.empty()) {
    if (rep.variant == Variant::GChJ_shifted) {
      out.note = "holds only when C1 = 0";
    } else {
      out.note = "holds only when C2 = 0";
    }
  }
  if (rep.variant == Variant::GHY_shifted &&
      (relation == RelationId::GHY_12 || relation == RelationId::GHY_13)) {
    const Residual diff = o.cmp(o.aad() - o.ada(), o.br(s) - o.br(0));
    out.extras.push_back({"unweighted_commutator", diff.scaled});
    if (!out.gated)
      out.note = "aa+ - a+a = [N+s] - [N] holds (residual " + fmt(diff.scaled) +
                 "); the weighted form needs C2 = 0 or PQ = 1";
  }
  if (relation == RelationId::C2_commutes && !out.gated) {
    out.note = "C2 is not constant on this representation when nu0 != 0";
  }

  out.residual = res;
  out.verdict = judge(res, tol, out.gated);
  if (out.verdict == Verdict::Vacuous) out.note = out.note.empty() ? "vacuous" : "vacuous; " + out.note;
  return out;
}

ResidualReport implication_experiment(RelationId which, const DeformationParams& params,
                                      std::size_t dim, double nu0, double tol) {
  if (!is_implication(which)) {
    throw Error(ErrorCode::InvalidArgument, std::string(relation_name(which)) +
                                                " is not an implication experiment");
  }
  const FockRep rep = build_rep(implication_variant(which), params, dim, nu0);
  return check_relation(rep, which, tol);
}

}  // namespace qdeform
