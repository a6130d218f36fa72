#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace glc3d {

/// Closed interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    [[nodiscard]] bool contains(double v) const noexcept { return lo <= v && v <= hi; }
    [[nodiscard]] bool contains(const Interval& other) const noexcept { return lo <= other.lo && other.hi <= hi; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Axis-aligned box of closed per-attribute intervals, clamped to [0, 1].
class Hyperblock {
public:
    /// Throws ValidationError on lo > hi or non-finite bounds.
    explicit Hyperblock(std::vector<Interval> bounds);

    [[nodiscard]] static Hyperblock full(std::size_t dimension);

    /// Box around `center` extending minus[i] below and plus[i] above on every
    /// attribute (the per-side deltas used to draw a rule rectangle).
    [[nodiscard]] static Hyperblock around(std::span<const double> center, std::span<const double> minus,
                                           std::span<const double> plus);

    [[nodiscard]] const std::vector<Interval>& bounds() const noexcept { return bounds_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return bounds_.size(); }
    [[nodiscard]] std::vector<double> lower() const;
    [[nodiscard]] std::vector<double> upper() const;

    /// True when `other` lies inside this block interval-wise.
    [[nodiscard]] bool contains(const Hyperblock& other) const;

    friend bool operator==(const Hyperblock&, const Hyperblock&) = default;

private:
    std::vector<Interval> bounds_;
};

/// Closed-interval membership on every attribute (unpadded values).
[[nodiscard]] bool hyperblock_contains(const Hyperblock& block, const CaseRecord& x);

/// Rectangle on the SPC pair `pair` (attributes 2*pair and 2*pair + 1).
struct PairBox {
    std::size_t pair = 0;
    Interval x;
    Interval y;

    friend bool operator==(const PairBox&, const PairBox&) = default;
};

/// Conjunction of pair rectangles: x is covered iff it lies in every rectangle.
struct RectangleRule {
    std::vector<PairBox> rectangles;
    std::string predicted_class;

    /// Each pair at most once, bounds ordered and within [0, 1].
    void validate() const;
    /// Equivalent block: unselected attributes get [0, 1]; a rectangle on a
    /// padded final pair constrains the last attribute with both intervals.
    [[nodiscard]] Hyperblock to_hyperblock(std::size_t dimension) const;

    friend bool operator==(const RectangleRule&, const RectangleRule&) = default;
};

struct HyperblockRule {
    Hyperblock block;
    std::string predicted_class;

    friend bool operator==(const HyperblockRule&, const HyperblockRule&) = default;
};

using Rule = std::variant<RectangleRule, HyperblockRule>;

[[nodiscard]] const std::string& predicted_class(const Rule& rule) noexcept;
/// Full-dimensional region of a rule; ContractError if the rule does not fit `dimension`.
[[nodiscard]] Hyperblock rule_region(const Rule& rule, std::size_t dimension);

struct ClassCount {
    std::string label;
    std::size_t count = 0;

    friend bool operator==(const ClassCount&, const ClassCount&) = default;
};

struct Confusion {
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t true_negative = 0;
    std::size_t false_negative = 0;

    friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// Coverage and quality of a rule against a dataset. `purity` is 0 and
/// `empty` is set when nothing is covered. accuracy/confusion are filled for
/// discriminants (covered = predicted class 1).
struct RuleStats {
    std::string predicted_class;
    std::size_t total = 0;
    std::size_t covered = 0;
    std::vector<ClassCount> per_class;
    double purity = 0.0;
    bool empty = true;
    std::optional<double> accuracy;
    std::optional<Confusion> confusion;

    friend bool operator==(const RuleStats&, const RuleStats&) = default;
};

/// Aggregates a coverage mask (one byte per case) into RuleStats.
[[nodiscard]] RuleStats coverage_stats(const Dataset& dataset, std::span<const std::uint8_t> covered,
                                       std::string_view predicted_class, bool with_accuracy);

/// One byte per case: 1 iff the case lies in the block.
[[nodiscard]] std::vector<std::uint8_t> coverage_mask(const Dataset& dataset, const Hyperblock& block);
/// One byte per case: 1 iff f(x) >= T.
[[nodiscard]] std::vector<std::uint8_t> discriminant_mask(const LinearModel& model, const Dataset& dataset);
/// f(x) for every case via the batch kernel.
[[nodiscard]] std::vector<double> scores(const LinearModel& model, const Dataset& dataset);

[[nodiscard]] RuleStats evaluate_rectangle_rule(const RectangleRule& rule, const Dataset& dataset);
[[nodiscard]] RuleStats evaluate_rule(const Rule& rule, const Dataset& dataset);

/// One-vs-rest use of f(x) >= T with `positive_class` as class 1.
[[nodiscard]] RuleStats apply_discrimination_rule(const LinearModel& model, const Dataset& dataset,
                                                  std::string_view positive_class);

/// Rule region intersected with the discriminant's class-1 side; purity is
/// measured against the rule's predicted class.
[[nodiscard]] RuleStats evaluate_rule_with_discriminant(const Rule& rule, const LinearModel& model,
                                                        const Dataset& dataset);

/// Replaces (or adds) the rectangle on `pair_index`.
[[nodiscard]] Rule refine_rule(const Rule& rule, std::size_t pair_index, Interval x, Interval y);

/// Exact [f1, f2] of f over the block, attained at corners.
[[nodiscard]] std::pair<double, double> regression_interval(const Hyperblock& block, const LinearModel& model);

/// f over one SPC cube's pair with the remaining attributes fixed at a
/// reference case. Corner order: (0,0), (0,1), (1,0), (1,1).
struct RegressionPlane {
    std::size_t cube_index = 0;
    std::array<double, 4> corner_values{};
    CaseRecord fixed_point;

    /// Bilinear interpolation of the corners at pair coordinates (u, v).
    [[nodiscard]] double value_at(double u, double v) const noexcept;
};

[[nodiscard]] RegressionPlane build_regression_plane(const LinearModel& model, const CaseRecord& x,
                                                     std::size_t cube_index);

struct ProbeResult {
    double value = 0.0;
    bool clamped = false;
};

/// f at x with only the cube's pair shifted by (delta_a, delta_b); shifted
/// coordinates are clamped to [0, 1] and the clamp is reported.
[[nodiscard]] ProbeResult probe(const LinearModel& model, const CaseRecord& x, std::size_t cube_index, double delta_a,
                                double delta_b);

struct Residual {
    std::size_t case_id = 0;
    double predicted = 0.0;
    double actual = 0.0;
    double residual = 0.0;
};

struct ResidualReport {
    std::vector<Residual> residuals;
    /// Cases whose attributes outside the cube's pair differ from the
    /// reference by more than the tolerance.
    std::vector<std::size_t> excluded;
};

[[nodiscard]] ResidualReport residuals_on_plane(const LinearModel& model, const Dataset& dataset,
                                                std::size_t cube_index, const CaseRecord& reference,
                                                double tolerance = 1e-6);

/// One step of a nested box sweep.
struct RefinementStep {
    Interval x;
    Interval y;
    RuleStats stats;
};

/// Headless rectangle refinement: starting from [0,1]^2 on `pair_index`,
/// repeatedly moves one box side inward past the outermost covered cases
/// until the covered subset of `selection` is pure in `target_class` (or
/// empty). Every box is contained in the previous one. The first step is the
/// unrefined full box.
[[nodiscard]] std::vector<RefinementStep> shrink_to_purity(const Dataset& dataset,
                                                           std::span<const std::uint8_t> selection,
                                                           std::size_t pair_index, std::string_view target_class);

}  // namespace glc3d
