#pragma once

// Batch kernels over a column-major case matrix. Each kernel has a scalar
// reference and, on x86-64, an AVX2 variant selected at runtime. The AVX2
// variants vectorize across cases and accumulate attributes in the scalar
// order, so both paths produce bit-identical results.

#include "glc3d/column_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace glc3d::kernels {

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view to_string(Isa isa) noexcept;
[[nodiscard]] bool isa_supported(Isa isa) noexcept;

/// Best supported ISA, unless overridden by force_isa() or GLC3D_SIMD=scalar.
[[nodiscard]] Isa active_isa() noexcept;

/// Test hook; nullopt restores automatic selection. Forcing an unsupported ISA
/// falls back to scalar.
void force_isa(std::optional<Isa> isa) noexcept;

/// out[j] = sum_i coefficients[i] * x(j, i), summed in attribute order.
void linear_scores(const ColumnMatrix& x, std::span<const double> coefficients, std::span<double> out);

/// mask[j] = 1 iff lo[i] <= x(j, i) <= hi[i] for every attribute i.
void box_mask(const ColumnMatrix& x, std::span<const double> lo, std::span<const double> hi,
              std::span<std::uint8_t> mask);

/// mask[j] = 1 iff scores[j] >= threshold.
void threshold_mask(std::span<const double> scores, double threshold, std::span<std::uint8_t> mask);

/// Raw entry points. `columns` is column-major with `rows` entries per column.
namespace scalar {
void linear_scores(const double* columns, std::size_t rows, std::size_t cols, const double* coefficients,
                   double* out) noexcept;
void box_mask(const double* columns, std::size_t rows, std::size_t cols, const double* lo, const double* hi,
              std::uint8_t* mask) noexcept;
void threshold_mask(const double* scores, std::size_t rows, double threshold, std::uint8_t* mask) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define GLC3D_HAVE_AVX2_KERNELS 1
namespace avx2 {
void linear_scores(const double* columns, std::size_t rows, std::size_t cols, const double* coefficients,
                   double* out) noexcept;
void box_mask(const double* columns, std::size_t rows, std::size_t cols, const double* lo, const double* hi,
              std::uint8_t* mask) noexcept;
void threshold_mask(const double* scores, std::size_t rows, double threshold, std::uint8_t* mask) noexcept;
}  // namespace avx2
#endif

}  // namespace glc3d::kernels
