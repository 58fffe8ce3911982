#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdeform/check.hpp"
#include "qdeform/fock.hpp"

namespace qdeform {

// Operator identities checked on a truncated ladder representation. Notation:
// P = p^-alpha, Q = q^gamma, s = l/(alpha gamma), [x] the deformed number.
//
//   GD_7          a+a = [N],  aa+ = [N+s]
//   GChJ_8        aa+ - P^s a+a = Q^N
//   GChJ_9        aa+ - Q^s a+a = P^N
//   GHY_12        aa+ - (PQ)^(s/2) a+a = (P^(N+s/2) + Q^(N+s/2)) / (P^(s/2) + Q^(s/2))
//   GHY_13        aa+ - (PQ)^s a+a = [N+s] - (PQ)^s [N]
//   NumberComm    [N, a] = -s a,  [N, a+] = s a+
//   C1_*, C2_*    Casimir commutators and eigenvalues
//   Imply_*       substitution experiments between the algebra versions
enum class RelationId {
  GD_7,
  GChJ_8,
  GChJ_9,
  GHY_12,
  GHY_13,
  NumberComm,
  C1_commutes,
  C1_eigenvalue_18,
  C2_commutes,
  C2_eigenvalue,
  Imply_15,
  Imply_19_20,
  Imply_26,
  Imply_27_28,
};

inline constexpr RelationId kAllRelations[] = {
    RelationId::GD_7,        RelationId::GChJ_8,           RelationId::GChJ_9,
    RelationId::GHY_12,      RelationId::GHY_13,           RelationId::NumberComm,
    RelationId::C1_commutes, RelationId::C1_eigenvalue_18, RelationId::C2_commutes,
    RelationId::C2_eigenvalue, RelationId::Imply_15,       RelationId::Imply_19_20,
    RelationId::Imply_26,    RelationId::Imply_27_28,
};

std::string_view relation_name(RelationId id);
std::optional<RelationId> parse_relation(std::string_view name);

bool is_implication(RelationId id);

/// Whether `id` can be evaluated on `rep` at all (otherwise WrongVariant).
bool relation_applicable(RelationId id, const FockRep& rep);

struct ResidualReport {
  RelationId relation = RelationId::GD_7;
  DeformationParams params;
  Variant variant = Variant::GChJ;
  std::size_t dim = 0;
  double nu0 = 0.0;
  Residual residual;  // residual.scaled is the figure compared against tolerance
  double tolerance = kDefaultTolerance;
  bool gated = true;
  Verdict verdict = Verdict::Pass;
  std::string note;
  std::vector<NamedResidual> extras;
};

/// C1 = P^-N ([N] - a+a). Variants GD, GChJ, GChJ_shifted.
Matrix casimir_c1(const FockRep& rep);

/// C2 = (PQ)^-N ([N] - a+a). Variants GHY_shifted, GD.
Matrix casimir_c2(const FockRep& rep);

/// Closed forms of the Casimir eigenvalues on the representations built here:
/// C1 = P^-nu0 [nu0] on GChJ_shifted, C2 = -(PQ)^-N [nu0] on GHY_shifted
/// (N the number eigenvalue n - nu0), zero otherwise.
double c1_eigenvalue(const FockRep& rep);
std::vector<double> c2_eigenvalues(const FockRep& rep);

ResidualReport check_relation(const FockRep& rep, RelationId relation,
                              double tol = kDefaultTolerance);

/// Same as check_relation restricted to the Imply_* tags.
ResidualReport implication_experiment(RelationId which, const DeformationParams& params,
                                      std::size_t dim, double nu0,
                                      double tol = kDefaultTolerance);

/// Default representation for an implication experiment: GD for Imply_15,
/// GChJ_shifted for Imply_19_20 / Imply_26, GHY_shifted for Imply_27_28.
Variant implication_variant(RelationId which);

}  // namespace qdeform
