#include "glc3d/kernels.hpp"

namespace glc3d::kernels::scalar {

void linear_scores(const double* columns, std::size_t rows, std::size_t cols, const double* coefficients,
                   double* out) noexcept {
    for (std::size_t j = 0; j < rows; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < cols; ++i) {
            sum += coefficients[i] * columns[i * rows + j];
        }
        out[j] = sum;
    }
}

void box_mask(const double* columns, std::size_t rows, std::size_t cols, const double* lo, const double* hi,
              std::uint8_t* mask) noexcept {
    for (std::size_t j = 0; j < rows; ++j) {
        std::uint8_t inside = 1;
        for (std::size_t i = 0; i < cols; ++i) {
            const double v = columns[i * rows + j];
            inside &= static_cast<std::uint8_t>(lo[i] <= v && v <= hi[i]);
        }
        mask[j] = inside;
    }
}

void threshold_mask(const double* scores, std::size_t rows, double threshold, std::uint8_t* mask) noexcept {
    for (std::size_t j = 0; j < rows; ++j) {
        mask[j] = static_cast<std::uint8_t>(scores[j] >= threshold);
    }
}

}  // namespace glc3d::kernels::scalar
