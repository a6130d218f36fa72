#include "glc3d/kernels.hpp"

#if defined(GLC3D_HAVE_AVX2_KERNELS)

#include <immintrin.h>

// Only these functions carry the avx2 target attribute; nothing inline from
// other headers is instantiated with it, so the rest of the binary stays
// baseline x86-64.
#define GLC3D_AVX2 __attribute__((target("avx2")))

namespace glc3d::kernels::avx2 {

namespace {

GLC3D_AVX2 inline void store_mask4(__m256d m, std::uint8_t* dst) noexcept {
    const int bits = _mm256_movemask_pd(m);
    dst[0] = static_cast<std::uint8_t>(bits & 1);
    dst[1] = static_cast<std::uint8_t>((bits >> 1) & 1);
    dst[2] = static_cast<std::uint8_t>((bits >> 2) & 1);
    dst[3] = static_cast<std::uint8_t>((bits >> 3) & 1);
}

}  // namespace

GLC3D_AVX2 void linear_scores(const double* columns, std::size_t rows, std::size_t cols,
                              const double* coefficients, double* out) noexcept {
    std::size_t j = 0;
    for (; j + 8 <= rows; j += 8) {
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        for (std::size_t i = 0; i < cols; ++i) {
            const __m256d a = _mm256_broadcast_sd(coefficients + i);
            const double* col = columns + i * rows + j;
            acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, _mm256_loadu_pd(col)));
            acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(a, _mm256_loadu_pd(col + 4)));
        }
        _mm256_storeu_pd(out + j, acc0);
        _mm256_storeu_pd(out + j + 4, acc1);
    }
    for (; j + 4 <= rows; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t i = 0; i < cols; ++i) {
            const __m256d a = _mm256_broadcast_sd(coefficients + i);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(a, _mm256_loadu_pd(columns + i * rows + j)));
        }
        _mm256_storeu_pd(out + j, acc);
    }
    for (; j < rows; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < cols; ++i) {
            sum += coefficients[i] * columns[i * rows + j];
        }
        out[j] = sum;
    }
}

GLC3D_AVX2 void box_mask(const double* columns, std::size_t rows, std::size_t cols, const double* lo,
                         const double* hi, std::uint8_t* mask) noexcept {
    std::size_t j = 0;
    for (; j + 4 <= rows; j += 4) {
        __m256d inside = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        for (std::size_t i = 0; i < cols; ++i) {
            const __m256d v = _mm256_loadu_pd(columns + i * rows + j);
            const __m256d ge = _mm256_cmp_pd(v, _mm256_broadcast_sd(lo + i), _CMP_GE_OQ);
            const __m256d le = _mm256_cmp_pd(v, _mm256_broadcast_sd(hi + i), _CMP_LE_OQ);
            inside = _mm256_and_pd(inside, _mm256_and_pd(ge, le));
        }
        store_mask4(inside, mask + j);
    }
    for (; j < rows; ++j) {
        std::uint8_t in = 1;
        for (std::size_t i = 0; i < cols; ++i) {
            const double v = columns[i * rows + j];
            in &= static_cast<std::uint8_t>(lo[i] <= v && v <= hi[i]);
        }
        mask[j] = in;
    }
}

GLC3D_AVX2 void threshold_mask(const double* scores, std::size_t rows, double threshold,
                               std::uint8_t* mask) noexcept {
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t j = 0;
    for (; j + 4 <= rows; j += 4) {
        store_mask4(_mm256_cmp_pd(_mm256_loadu_pd(scores + j), t, _CMP_GE_OQ), mask + j);
    }
    for (; j < rows; ++j) {
        mask[j] = static_cast<std::uint8_t>(scores[j] >= threshold);
    }
}

}  // namespace glc3d::kernels::avx2

#endif
