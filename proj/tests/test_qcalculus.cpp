#include <cmath>
#include <random>

#include "doctest.h"
#include "grid.hpp"
#include "qdeform/error.hpp"
#include "qdeform/laurent_json.hpp"
#include "qdeform/qcalculus.hpp"

using namespace qdeform;

namespace {
DeformationParams cj(double p, double q) { return DeformationParams::validate(p, q, 1, 1, 1, true); }

LaurentPoly random_poly(std::mt19937_64& rng, int terms) {
  std::uniform_int_distribution<int> k(-6, 6);
  std::uniform_real_distribution<double> u(-2, 2);
  LaurentPoly p;
  for (int i = 0; i < terms; ++i) p.add(k(rng), {u(rng), u(rng)});
  return p;
}
}  // namespace

TEST_CASE("Laurent polynomial basics") {
  LaurentPoly p = LaurentPoly::monomial(2, 3.0);
  p.add(2, -3.0);
  CHECK(p.is_zero());
  p.add(-1, {1, 2});
  p.add(3, 0.0);
  CHECK(p.size() == 1);
  const LaurentPoly q = LaurentPoly::monomial(1, 2.0) * p;
  CHECK(q.coefficient(0) == cplx(2, 4));
  CHECK(p.evaluate(2.0) == cplx(0.5, 1.0));
  CHECK((0.0 * q).is_zero());
}

TEST_CASE("Laurent JSON round trip") {
  std::mt19937_64 rng(3);
  const LaurentPoly p = random_poly(rng, 5);
  const auto j = laurent_to_json(p);
  CHECK(laurent_from_json(j) == p);
  CHECK(laurent_from_json(nlohmann::json::parse(R"({"-2": [1, 0], "3": 2.5})")).coefficient(3) ==
        cplx(2.5, 0));
  CHECK_THROWS_AS(laurent_from_json(nlohmann::json::parse(R"({"x": [1, 0]})")), Error);
  CHECK_THROWS_AS(laurent_from_json(nlohmann::json::parse(R"({"1": [1]})")), Error);
  CHECK_THROWS_AS(laurent_from_json(nlohmann::json::parse("[1]")), Error);
}

TEST_CASE("deformed derivative") {
  const auto d = deformed_derivative(LaurentPoly::monomial(2), cj(0.8, 1.2));
  CHECK(d.size() == 1);
  CHECK(d.coefficient(1).real() == doctest::Approx(2.45));
  CHECK(deformed_derivative(LaurentPoly::monomial(0, 5.0), cj(0.8, 1.2)).is_zero());

  LaurentPoly phi = LaurentPoly::monomial(3, 3.0);
  phi.add(-1, 1.0);
  const auto d2 = deformed_derivative(phi, cj(0.5, 1.0));
  CHECK(d2.coefficient(2).real() == doctest::Approx(21.0));
  CHECK(d2.coefficient(-2).real() == doctest::Approx(-0.5));
}

TEST_CASE("monomial rule matches the difference quotient") {
  std::mt19937_64 rng(5);
  for (const auto& pr : test_grid::ladder_grid()) {
    if (std::fabs(pr.D()) < 1e-3) continue;
    const LaurentPoly phi = random_poly(rng, 3);
    const cplx z(0.7, 0.4);
    const cplx rule = deformed_derivative(phi, pr).evaluate(z);
    const cplx direct = deformed_derivative_at(phi, z, pr);
    CHECK(std::abs(rule - direct) <= 1e-9 * std::max(1.0, std::abs(rule)));
  }
  CHECK_THROWS_AS(deformed_derivative_at(LaurentPoly::monomial(1), 0.0, cj(0.5, 1)), Error);
}

TEST_CASE("delta_n") {
  const auto pr = cj(0.5, 1.0);
  const auto d = delta_n(LaurentPoly::monomial(1), 0, 1.0, pr);
  CHECK(d.coefficient(1).real() == doctest::Approx(3.0));

  std::mt19937_64 rng(9);
  for (int i = 0; i < 20; ++i) {
    const LaurentPoly phi = random_poly(rng, 4);
    CHECK(delta_n(phi, -1, 0.37 * i, pr) == deformed_derivative(phi, pr));
    // Linearity.
    const LaurentPoly psi = random_poly(rng, 3);
    const cplx a(0.3, -1.1);
    CHECK(approx_equal(delta_n(phi + a * psi, 2, 1.5, pr),
                       delta_n(phi, 2, 1.5, pr) + a * delta_n(psi, 2, 1.5, pr), 1e-14));
  }
}

TEST_CASE("delta_n classical limit") {
  // n = 1, h = 2: z^k -> (k + 4) z^(k+1) / s with s = 2 here.
  double prev = 1e300;
  for (const auto& pr : classical_path(1, 1, 2, 2, 8)) {
    double worst = 0.0;
    for (int k = -3; k <= 3; ++k) {
      const auto d = delta_n(LaurentPoly::monomial(k), 1, 2.0, pr);
      worst = std::max(worst, std::abs(d.coefficient(k + 1) - (k + 4.0) / 2.0));
    }
    CHECK(worst <= prev);
    prev = worst;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("general variation") {
  const auto pr = cj(0.5, 1.0);
  const auto phi = LaurentPoly::monomial(1);
  CHECK(general_variation(phi, LaurentPoly::monomial(1), 1.0, pr) == delta_n(phi, 0, 1.0, pr));
  CHECK(general_variation(phi, LaurentPoly::monomial(1, 0.0), 1.0, pr).is_zero());

  // h = 0: eps * D phi.
  const auto eps = LaurentPoly::monomial(3, 0.5);
  CHECK(approx_equal(general_variation(phi, eps, 0.0, pr), eps * deformed_derivative(phi, pr), 1e-15));

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& g : test_grid::ladder_grid()) {
    const LaurentPoly f = random_poly(rng, 3);
    const std::int64_t n = static_cast<std::int64_t>(u(rng) * 1.5);
    const cplx en(u(rng), u(rng));
    const double h = 0.25 * std::round(4 * u(rng));
    const auto lhs = general_variation(f, LaurentPoly::monomial(n + 1, en), h, g);
    const auto rhs = en * delta_n(f, n, h, g);
    CHECK(approx_equal(lhs, rhs, 1e-12));
  }

  LaurentPoly two = LaurentPoly::monomial(1);
  two.add(2, 1.0);
  CHECK_THROWS_AS(general_variation(phi, two, 1.0, pr), Error);
}
