#include "qdeform/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qdeform::kernels {
namespace {

Isa initial_isa() {
  Isa isa = detect_isa();
  if (const char* env = std::getenv("QDEFORM_KERNELS")) {
    const std::string v(env);
    Isa wanted = isa;
    if (v == "scalar") wanted = Isa::Scalar;
    else if (v == "avx2") wanted = Isa::Avx2;
    else if (v == "neon") wanted = Isa::Neon;
    isa = isa_supported(wanted) ? wanted : Isa::Scalar;
  }
  return isa;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b, std::size_t c, std::size_t rows,
                 std::size_t inner, std::size_t cols) {
  if (a < rows * inner || b < inner * cols || c < rows * cols) {
    throw std::invalid_argument("matmul: span too small for the given shape");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

bool set_active_isa(Isa isa) {
  if (!isa_supported(isa)) return false;
  active().store(isa, std::memory_order_relaxed);
  return true;
}

void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c,
            std::size_t rows, std::size_t inner, std::size_t cols) {
  check_sizes(a.size(), b.size(), c.size(), rows, inner, cols);
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::matmul(a.data(), b.data(), c.data(), rows, inner, cols);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::matmul(a.data(), b.data(), c.data(), rows, inner, cols);
#endif
    default: return scalar::matmul(a.data(), b.data(), c.data(), rows, inner, cols);
  }
}

void matmul_abs(std::span<const double> a, std::span<const double> b, std::span<double> c,
                std::size_t rows, std::size_t inner, std::size_t cols) {
  check_sizes(a.size(), b.size(), c.size(), rows, inner, cols);
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::matmul_abs(a.data(), b.data(), c.data(), rows, inner, cols);
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::matmul_abs(a.data(), b.data(), c.data(), rows, inner, cols);
#endif
    default: return scalar::matmul_abs(a.data(), b.data(), c.data(), rows, inner, cols);
  }
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_abs_diff: size mismatch");
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::max_abs_diff(a.data(), b.data(), a.size());
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::max_abs_diff(a.data(), b.data(), a.size());
#endif
    default: return scalar::max_abs_diff(a.data(), b.data(), a.size());
  }
}

double max_scaled_diff(std::span<const double> a, std::span<const double> b,
                       std::span<const double> scale) {
  if (a.size() != b.size() || a.size() != scale.size()) {
    throw std::invalid_argument("max_scaled_diff: size mismatch");
  }
  switch (active_isa()) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2: return avx2::max_scaled_diff(a.data(), b.data(), scale.data(), a.size());
#endif
#if defined(__aarch64__)
    case Isa::Neon: return neon::max_scaled_diff(a.data(), b.data(), scale.data(), a.size());
#endif
    default: return scalar::max_scaled_diff(a.data(), b.data(), scale.data(), a.size());
  }
}

}  // namespace qdeform::kernels
