#pragma once

#include "glc3d/dataset.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace glc3d {

enum class Decision { class1, class2 };

/// Linear function f(x) = sum a_i x_i with a_i = c_i / c_max, c_max = max |c_i|,
/// plus the GLC-L angles Q_i = arccos(a_i) and an optional threshold T in
/// normalized-function units. Immutable; the with_* members return copies.
class LinearModel {
public:
    /// Normalizes raw coefficients. Throws ValidationError if all are zero.
    static LinearModel from_coefficients(std::vector<double> raw);

    [[nodiscard]] LinearModel with_threshold(double threshold) const;
    [[nodiscard]] LinearModel with_positive_class(std::string label) const;

    [[nodiscard]] std::size_t dimension() const noexcept { return normalized_.size(); }
    [[nodiscard]] const std::vector<double>& raw_coefficients() const noexcept { return raw_; }
    [[nodiscard]] const std::vector<double>& normalized_coefficients() const noexcept { return normalized_; }
    [[nodiscard]] const std::vector<double>& angles() const noexcept { return angles_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] const std::optional<double>& threshold() const noexcept { return threshold_; }
    /// Label treated as class 1 when the model is used as a one-vs-rest discriminant.
    [[nodiscard]] const std::optional<std::string>& positive_class() const noexcept { return positive_class_; }

    /// Threshold, or ContractError if it was never set.
    [[nodiscard]] double require_threshold() const;

    friend bool operator==(const LinearModel&, const LinearModel&) = default;

private:
    LinearModel() = default;

    std::vector<double> raw_;
    std::vector<double> normalized_;
    std::vector<double> angles_;
    double scale_ = 1.0;
    std::optional<double> threshold_;
    std::optional<std::string> positive_class_;
};

[[nodiscard]] inline LinearModel normalize_coefficients(std::span<const double> raw) {
    return LinearModel::from_coefficients({raw.begin(), raw.end()});
}

/// Q_i = arccos(a_i). Throws ValidationError if some |a_i| > 1.
[[nodiscard]] std::vector<double> angles_from_coefficients(std::span<const double> coefficients);

/// Plain dot product in index order; the reference every batch kernel matches.
[[nodiscard]] double evaluate(std::span<const double> coefficients, std::span<const double> x);

/// f(x) over the case's unpadded values.
[[nodiscard]] double evaluate(const LinearModel& model, const CaseRecord& x);

/// Number of attribute pairs for an n-D model (odd n gets a padded final pair).
[[nodiscard]] constexpr std::size_t pair_count(std::size_t n) noexcept { return (n + 1) / 2; }

/// a_{2k} x_{2k} + a_{2k+1} x_{2k+1} (0-based). A padded attribute has
/// coefficient 0, so contributions always sum to f(x).
[[nodiscard]] double contribution(const LinearModel& model, const CaseRecord& x, std::size_t pair_index);

/// class1 iff f(x) >= T.
[[nodiscard]] Decision classify(const LinearModel& model, const CaseRecord& x);

/// Converts a threshold on F(x) = sum c_i x_i to the equivalent threshold on f.
[[nodiscard]] double scaled_threshold(const LinearModel& model, double raw_threshold);

// Plain-text key/value model document.
[[nodiscard]] std::string write_model(const LinearModel& model);
[[nodiscard]] LinearModel read_model(std::string_view text);
void save_model_file(const std::filesystem::path& path, const LinearModel& model);
[[nodiscard]] LinearModel load_model_file(const std::filesystem::path& path);

}  // namespace glc3d
