#pragma once

// Dense double-precision inner loops used by the operator checks.
//
// Every kernel has a scalar reference implementation and vectorized variants
// (AVX2 on x86-64, NEON on aarch64). Variants accumulate in the same order as
// the scalar code and are compiled without FP contraction, so results are
// bit-identical across implementations; the equivalence tests rely on that.

#include <cstddef>
#include <span>
#include <string_view>

namespace qdeform::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// Best instruction set available on this CPU (ignores any override).
Isa detect_isa();

/// Instruction set used by the dispatching entry points below. Defaults to
/// detect_isa(); the QDEFORM_KERNELS environment variable ("scalar", "avx2",
/// "neon") can force a choice, falling back to scalar when unsupported.
Isa active_isa();

/// Overrides the active instruction set for the rest of the process.
/// Returns false (and leaves the choice unchanged) if `isa` is unsupported.
bool set_active_isa(Isa isa);

bool isa_supported(Isa isa);

// C[rows x cols] = A[rows x inner] * B[inner x cols], row-major, C overwritten.
void matmul(std::span<const double> a, std::span<const double> b, std::span<double> c,
            std::size_t rows, std::size_t inner, std::size_t cols);

// C = |A| * |B| (entrywise absolute values). Used for rounding-magnitude tracking.
void matmul_abs(std::span<const double> a, std::span<const double> b, std::span<double> c,
                std::size_t rows, std::size_t inner, std::size_t cols);

// max_i |a[i] - b[i]|; 0 for empty input.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

// max_i |a[i] - b[i]| / max(1, scale[i]).
double max_scaled_diff(std::span<const double> a, std::span<const double> b,
                       std::span<const double> scale);

// Per-ISA implementations, exposed for the equivalence tests.
namespace scalar {
void matmul(const double* a, const double* b, double* c, std::size_t rows, std::size_t inner,
            std::size_t cols);
void matmul_abs(const double* a, const double* b, double* c, std::size_t rows,
                std::size_t inner, std::size_t cols);
double max_abs_diff(const double* a, const double* b, std::size_t n);
double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void matmul(const double* a, const double* b, double* c, std::size_t rows, std::size_t inner,
            std::size_t cols);
void matmul_abs(const double* a, const double* b, double* c, std::size_t rows,
                std::size_t inner, std::size_t cols);
double max_abs_diff(const double* a, const double* b, std::size_t n);
double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
void matmul(const double* a, const double* b, double* c, std::size_t rows, std::size_t inner,
            std::size_t cols);
void matmul_abs(const double* a, const double* b, double* c, std::size_t rows,
                std::size_t inner, std::size_t cols);
double max_abs_diff(const double* a, const double* b, std::size_t n);
double max_scaled_diff(const double* a, const double* b, const double* scale, std::size_t n);
}  // namespace neon
#endif

}  // namespace qdeform::kernels
