#pragma once

#include "glc3d/column_matrix.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glc3d {

/// One labeled n-D point. `padding` counts trailing values that are copies
/// added by pad_to_multiple and must be dropped on reconstruction.
struct CaseRecord {
    std::size_t id = 0;
    std::vector<double> values;
    std::string class_label;
    std::size_t padding = 0;
    std::optional<double> target;

    /// Dimensionality without padding.
    [[nodiscard]] std::size_t dimension() const noexcept { return values.size() - padding; }

    friend bool operator==(const CaseRecord&, const CaseRecord&) = default;
};

/// Original-unit range of one attribute, recorded by normalize().
struct AttributeRange {
    double min = 0.0;
    double max = 0.0;

    [[nodiscard]] double denormalize(double v) const noexcept { return min + v * (max - min); }

    friend bool operator==(const AttributeRange&, const AttributeRange&) = default;
};

struct LoadConfig {
    std::string class_column = "class";
    char delimiter = ',';
    /// Optional numeric regression target column (excluded from the attributes).
    std::optional<std::string> target_column;
};

/// Labeled n-D dataset. Immutable after construction; the constructor checks
/// every invariant (uniform dimensionality, known class labels, unit-interval
/// values when normalization metadata is present).
class Dataset {
public:
    Dataset(std::vector<std::string> attribute_names, std::vector<CaseRecord> cases,
            std::optional<std::vector<AttributeRange>> normalization = std::nullopt,
            std::optional<std::string> target_name = std::nullopt);

    [[nodiscard]] const std::vector<std::string>& attribute_names() const noexcept { return attribute_names_; }
    [[nodiscard]] std::span<const CaseRecord> cases() const noexcept { return cases_; }
    [[nodiscard]] const CaseRecord& at(std::size_t i) const { return cases_.at(i); }
    /// Distinct class names in order of first appearance.
    [[nodiscard]] const std::vector<std::string>& class_labels() const noexcept { return class_labels_; }
    [[nodiscard]] const std::optional<std::vector<AttributeRange>>& normalization() const noexcept {
        return normalization_;
    }
    [[nodiscard]] const std::optional<std::string>& target_name() const noexcept { return target_name_; }

    [[nodiscard]] bool is_normalized() const noexcept { return normalization_.has_value(); }
    [[nodiscard]] bool has_target() const noexcept { return target_name_.has_value(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return attribute_names_.size(); }
    [[nodiscard]] std::size_t size() const noexcept { return cases_.size(); }

    [[nodiscard]] std::optional<std::size_t> class_index(std::string_view label) const;
    /// class_labels() index of every case, in case order.
    [[nodiscard]] std::span<const std::size_t> case_classes() const noexcept { return case_classes_; }
    [[nodiscard]] const ColumnMatrix& columns() const noexcept { return columns_; }

private:
    std::vector<std::string> attribute_names_;
    std::vector<CaseRecord> cases_;
    std::vector<std::string> class_labels_;
    std::optional<std::vector<AttributeRange>> normalization_;
    std::optional<std::string> target_name_;
    std::vector<std::size_t> case_classes_;
    ColumnMatrix columns_;
};

/// Parses RFC-4180 style CSV with a header row. Returns data in original units.
[[nodiscard]] Dataset load_csv(std::istream& source, const LoadConfig& config = {});
[[nodiscard]] Dataset load_csv_file(const std::filesystem::path& path, const LoadConfig& config = {});

/// Writes the dataset in original units (denormalized when metadata is present).
void write_csv(std::ostream& out, const Dataset& dataset, const LoadConfig& config = {});

/// Min-max maps every attribute onto [0, 1]; constant columns map to 0.5.
/// Normalizing an already normalized dataset composes the recorded ranges.
[[nodiscard]] Dataset normalize(const Dataset& dataset);

/// Inverse of normalize(); returns the dataset unchanged if it is not normalized.
[[nodiscard]] Dataset denormalize(const Dataset& dataset);

/// Appends copies of the trailing values until the length is a multiple of k.
/// k must be 2 or 3.
[[nodiscard]] CaseRecord pad_to_multiple(const CaseRecord& record, std::size_t k);

/// Removes padding added by pad_to_multiple.
[[nodiscard]] CaseRecord strip_padding(const CaseRecord& record);

}  // namespace glc3d
