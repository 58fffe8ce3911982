#include <cmath>

#include "doctest.h"
#include "grid.hpp"
#include "qdeform/error.hpp"
#include "qdeform/relations.hpp"

using namespace qdeform;

namespace {
DeformationParams cj(double p, double q) { return DeformationParams::validate(p, q, 1, 1, 1, true); }

constexpr RelationId kCore[] = {RelationId::GD_7,   RelationId::GChJ_8, RelationId::GChJ_9,
                                RelationId::GHY_12, RelationId::GHY_13, RelationId::NumberComm};
}  // namespace

TEST_CASE("relation names round-trip") {
  for (RelationId id : kAllRelations) CHECK(parse_relation(relation_name(id)) == id);
  CHECK_FALSE(parse_relation("GD_8").has_value());
}

TEST_CASE("core relations on GChJ at p = 0.8, q = 1.2") {
  const auto rep = build_gchj(cj(0.8, 1.2), 8);
  for (RelationId id : kCore) {
    const auto r = check_relation(rep, id);
    CHECK(r.verdict == Verdict::Pass);
    CHECK(r.residual.absolute < 1e-12);
    CHECK(r.gated);
  }
}

TEST_CASE("dimension one is vacuous") {
  const auto rep = build_gchj(cj(0.8, 1.2), 1);
  for (RelationId id : kCore) {
    const auto r = check_relation(rep, id);
    CHECK(r.verdict == Verdict::Vacuous);
    CHECK(r.note.find("vacuous") != std::string::npos);
  }
}

TEST_CASE("core relations hold on unshifted representations across the grid") {
  for (const auto& pr : test_grid::ladder_grid()) {
    for (std::size_t dim : {4u, 8u, 16u}) {
      for (Variant v : {Variant::GD, Variant::GChJ}) {
        const auto rep = build_rep(v, pr, dim);
        for (RelationId id : kCore) {
          const auto r = check_relation(rep, id, 1e-10);
          INFO(relation_name(id), " p=", pr.p(), " q=", pr.q(), " a=", pr.alpha(),
               " g=", pr.gamma(), " l=", pr.l(), " dim=", dim);
          CHECK(r.verdict == Verdict::Pass);
        }
      }
    }
  }
}

TEST_CASE("C1 on the shifted representation") {
  SUBCASE("p = 0.5, q = 1, nu0 = 1 gives 0.5 on the diagonal") {
    const auto rep = build_gchj_shifted(cj(0.5, 1.0), 6, 1.0);
    const Matrix c1 = casimir_c1(rep);
    CHECK(c1.is_diagonal(1e-14));
    for (double d : c1.diag()) CHECK(d == doctest::Approx(0.5).epsilon(1e-13));
    // Non-implication witness: C1 is far from zero.
    CHECK(c1.max_abs() > 0.1);
    CHECK(check_relation(rep, RelationId::C1_eigenvalue_18).verdict == Verdict::Pass);
  }
  SUBCASE("unshifted gives zero") {
    const Matrix c1 = casimir_c1(build_gchj(cj(0.8, 1.2), 5));
    CHECK(c1.max_abs() < 1e-14);
    const Matrix c0 = casimir_c1(build_gchj_shifted(cj(0.8, 1.2), 5, 0.0));
    CHECK(c0.max_abs() < 1e-14);
  }
  SUBCASE("wrong variant") {
    CHECK_THROWS_AS(casimir_c1(build_ghy_shifted(cj(0.5, 1.0), 3, 1.0)), Error);
    CHECK_THROWS_AS(check_relation(build_gchj(cj(0.5, 1.0), 3), RelationId::C2_commutes), Error);
  }
}

TEST_CASE("C1 commutes and has the closed-form eigenvalue across the grid") {
  for (const auto& pr : test_grid::ladder_grid()) {
    for (double nu0 : {0.0, 1.0, 2.0}) {
      const auto rep = build_gchj_shifted(pr, 8, nu0);
      const auto com = check_relation(rep, RelationId::C1_commutes);
      const auto eig = check_relation(rep, RelationId::C1_eigenvalue_18);
      INFO("p=", pr.p(), " q=", pr.q(), " a=", pr.alpha(), " g=", pr.gamma(), " nu0=", nu0);
      CHECK(com.verdict == Verdict::Pass);
      CHECK(eig.verdict == Verdict::Pass);
      CHECK(check_relation(rep, RelationId::GChJ_8).verdict == Verdict::Pass);
    }
  }
}

TEST_CASE("shifted GChJ breaks the other forms when nu0 != 0") {
  const auto rep = build_gchj_shifted(cj(0.5, 1.0), 6, 1.0);
  const auto gd = check_relation(rep, RelationId::GD_7);
  CHECK_FALSE(gd.gated);
  CHECK(gd.verdict == Verdict::DocumentedDiscrepancy);
  CHECK(check_relation(rep, RelationId::GChJ_9).verdict == Verdict::DocumentedDiscrepancy);
}

TEST_CASE("C2 on the shifted GHY representation") {
  const auto rep = build_ghy_shifted(cj(0.5, 1.0), 4, 1.0);
  const Matrix c2 = casimir_c2(rep);
  // -(p^alpha q^-gamma)^(n - nu0)[nu0] = -0.5^(n-1); rung 0 is a truncation edge.
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK(c2(i, i) == doctest::Approx(-std::pow(0.5, static_cast<double>(i) - 1.0)));
  }
  const auto eig = check_relation(rep, RelationId::C2_eigenvalue);
  CHECK(eig.gated);
  CHECK(eig.verdict == Verdict::Pass);
  REQUIRE(eig.extras.size() == 1);
  CHECK(eig.extras[0].value > 0.1);

  const auto com = check_relation(rep, RelationId::C2_commutes);
  CHECK_FALSE(com.gated);
  CHECK(com.verdict == Verdict::DocumentedDiscrepancy);

  const auto ghy = check_relation(rep, RelationId::GHY_13);
  CHECK(ghy.verdict == Verdict::DocumentedDiscrepancy);
  CHECK(ghy.extras.back().name == "unweighted_commutator");
  CHECK(ghy.extras.back().value < 1e-12);

  CHECK(check_relation(rep, RelationId::NumberComm).verdict == Verdict::Pass);
  CHECK(casimir_c2(build_ghy_shifted(cj(0.5, 1.0), 4, 0.0)).max_abs() < 1e-14);
  // C2 commutes with N exactly.
  const Matrix com_n = commutator(c2, rep.Nop);
  CHECK(com_n.max_abs() == 0.0);
}

TEST_CASE("implication experiments") {
  SUBCASE("Imply_15") {
    for (const auto& pr : test_grid::ladder_grid()) {
      const auto r = implication_experiment(RelationId::Imply_15, pr, 8, 0.0);
      CHECK(r.verdict == Verdict::Pass);
    }
    const auto r = implication_experiment(RelationId::Imply_15, cj(0.8, 1.2), 6, 0.0);
    CHECK(r.extras[0].value > 0.1);
  }
  SUBCASE("Imply_19_20") {
    CHECK(implication_experiment(RelationId::Imply_19_20, cj(0.5, 1.0), 6, 1.0).verdict ==
          Verdict::Pass);
    CHECK(implication_experiment(RelationId::Imply_19_20, cj(0.5, 1.0), 6, 0.0).verdict ==
          Verdict::Pass);
    for (const auto& pr : test_grid::ladder_grid())
      CHECK(implication_experiment(RelationId::Imply_19_20, pr, 8, 2.0).verdict == Verdict::Pass);
  }
  SUBCASE("Imply_26 needs its correction when q != 1") {
    const auto r = implication_experiment(RelationId::Imply_26, cj(0.8, 1.2), 6, 1.0);
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(r.extras.size() == 2);
    CHECK(r.extras[0].name == "without_correction");
    CHECK(r.extras[0].value > 1e-3);
    // At q = 1 the correction term vanishes identically.
    const auto flat = implication_experiment(RelationId::Imply_26, cj(0.5, 1.0), 6, 1.0);
    CHECK(flat.verdict == Verdict::Pass);
    CHECK(flat.extras[0].value < 1e-12);
    for (const auto& pr : test_grid::ladder_grid())
      CHECK(implication_experiment(RelationId::Imply_26, pr, 8, 1.0).verdict == Verdict::Pass);
  }
  SUBCASE("Imply_27_28") {
    for (const auto& pr : test_grid::ladder_grid())
      CHECK(implication_experiment(RelationId::Imply_27_28, pr, 8, 0.0).verdict == Verdict::Pass);
    const auto r = implication_experiment(RelationId::Imply_27_28, cj(0.5, 1.0), 6, 1.0);
    CHECK_FALSE(r.gated);
    CHECK(r.verdict == Verdict::DocumentedDiscrepancy);
  }
  CHECK_THROWS_AS(implication_experiment(RelationId::GD_7, cj(0.5, 1.0), 4, 0.0), Error);
}
