#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qdeform/kernels.hpp"

namespace k = qdeform::kernels;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Plain triple loop, independent of the kernel code.
std::vector<double> naive_matmul(const std::vector<double>& a, const std::vector<double>& b,
                                 std::size_t m, std::size_t n, std::size_t p) {
  std::vector<double> c(m * p, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      double acc = 0.0;
      for (std::size_t t = 0; t < n; ++t) acc += a[i * n + t] * b[t * p + j];
      c[i * p + j] = acc;
    }
  return c;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar matmul matches a naive product") {
  std::mt19937_64 rng(7);
  for (std::size_t m : {1u, 3u, 8u})
    for (std::size_t n : {1u, 5u, 9u})
      for (std::size_t p : {1u, 4u, 7u, 13u}) {
        const auto a = random_vec(rng, m * n);
        const auto b = random_vec(rng, n * p);
        std::vector<double> c(m * p, 99.0);
        k::scalar::matmul(a.data(), b.data(), c.data(), m, n, p);
        const auto ref = naive_matmul(a, b, m, n, p);
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(ref[i]));
      }
}

TEST_CASE("scalar reductions") {
  const std::vector<double> a{1.0, -2.0, 3.0};
  const std::vector<double> b{1.5, -2.0, 0.0};
  const std::vector<double> s{0.0, 10.0, 6.0};
  CHECK(k::scalar::max_abs_diff(a.data(), b.data(), 3) == 3.0);
  CHECK(k::scalar::max_scaled_diff(a.data(), b.data(), s.data(), 3) == 0.5);
  CHECK(k::scalar::max_abs_diff(a.data(), b.data(), 0) == 0.0);
}

TEST_CASE("reductions propagate NaN") {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n : {1u, 4u, 11u}) {
    for (std::size_t at = 0; at < n; ++at) {
      std::vector<double> a(n, 1.0), b(n, 0.0), s(n, 1.0);
      a[at] = nan;
      CHECK(std::isnan(k::scalar::max_abs_diff(a.data(), b.data(), n)));
      CHECK(std::isnan(k::scalar::max_scaled_diff(a.data(), b.data(), s.data(), n)));
      CHECK(std::isnan(k::max_abs_diff(a, b)));
      CHECK(std::isnan(k::max_scaled_diff(a, b, s)));
    }
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!k::isa_supported(k::Isa::Avx2)) return;
  std::mt19937_64 rng(11);
  for (std::size_t m : {1u, 2u, 5u, 16u})
    for (std::size_t n : {1u, 3u, 16u})
      for (std::size_t p : {1u, 3u, 4u, 5u, 8u, 17u, 64u}) {
        const auto a = random_vec(rng, m * n);
        const auto b = random_vec(rng, n * p);
        std::vector<double> c1(m * p), c2(m * p);
        k::scalar::matmul(a.data(), b.data(), c1.data(), m, n, p);
        k::avx2::matmul(a.data(), b.data(), c2.data(), m, n, p);
        CHECK(same_bits(c1, c2));
        k::scalar::matmul_abs(a.data(), b.data(), c1.data(), m, n, p);
        k::avx2::matmul_abs(a.data(), b.data(), c2.data(), m, n, p);
        CHECK(same_bits(c1, c2));
      }
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 1000u}) {
    const auto a = random_vec(rng, n);
    const auto b = random_vec(rng, n);
    auto s = random_vec(rng, n);
    for (double& x : s) x = std::fabs(x) * 3.0;
    CHECK(k::scalar::max_abs_diff(a.data(), b.data(), n) ==
          k::avx2::max_abs_diff(a.data(), b.data(), n));
    CHECK(k::scalar::max_scaled_diff(a.data(), b.data(), s.data(), n) ==
          k::avx2::max_scaled_diff(a.data(), b.data(), s.data(), n));
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t at = 0; at < 9; ++at) {
    std::vector<double> a(9, 1.0), b(9, 0.0), s(9, 1.0);
    b[at] = nan;
    CHECK(std::isnan(k::avx2::max_abs_diff(a.data(), b.data(), 9)));
    CHECK(std::isnan(k::avx2::max_scaled_diff(a.data(), b.data(), s.data(), 9)));
  }
}
#endif

#if defined(__aarch64__)
TEST_CASE("neon kernels are bit-identical to scalar") {
  std::mt19937_64 rng(13);
  for (std::size_t p : {1u, 2u, 3u, 9u}) {
    const auto a = random_vec(rng, 4 * 5);
    const auto b = random_vec(rng, 5 * p);
    std::vector<double> c1(4 * p), c2(4 * p);
    k::scalar::matmul(a.data(), b.data(), c1.data(), 4, 5, p);
    k::neon::matmul(a.data(), b.data(), c2.data(), 4, 5, p);
    CHECK(same_bits(c1, c2));
  }
}
#endif

TEST_CASE("dispatch") {
  CHECK(k::isa_supported(k::Isa::Scalar));
  CHECK(k::isa_supported(k::detect_isa()));
  const auto before = k::active_isa();
  CHECK(k::set_active_isa(k::Isa::Scalar));
  CHECK(k::active_isa() == k::Isa::Scalar);
  std::vector<double> a{1, 2, 3, 4}, b{5, 6, 7, 8}, c(4);
  k::matmul(a, b, c, 2, 2, 2);
  CHECK(c == std::vector<double>{19, 22, 43, 50});
  CHECK_THROWS_AS(k::matmul(a, b, c, 2, 3, 2), std::invalid_argument);
  CHECK(k::set_active_isa(before));
  CHECK(k::isa_name(k::Isa::Avx2) == "avx2");
}
