#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace glc3d {

/// Column-major copy of case values: column i holds attribute i of every case
/// contiguously. This is the layout the batch kernels consume.
class ColumnMatrix {
public:
    ColumnMatrix() = default;
    ColumnMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

    [[nodiscard]] double& at(std::size_t row, std::size_t col) noexcept { return data_[col * rows_ + row]; }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const noexcept { return data_[col * rows_ + row]; }

    [[nodiscard]] std::span<const double> column(std::size_t col) const noexcept {
        return {data_.data() + col * rows_, rows_};
    }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace glc3d
