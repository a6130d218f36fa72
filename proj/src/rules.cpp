#include "glc3d/rules.hpp"

#include "glc3d/error.hpp"
#include "glc3d/kernels.hpp"
#include "glc3d/number_format.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace glc3d {

namespace {

void check_interval(const Interval& interval, const std::string& what) {
    if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
        throw ValidationError(what + ": bounds must be finite");
    }
    if (interval.lo > interval.hi) {
        throw ValidationError(what + ": lower bound " + format_double(interval.lo) + " exceeds upper bound " +
                              format_double(interval.hi));
    }
}

Interval clamp_unit(const Interval& interval) {
    return {std::clamp(interval.lo, 0.0, 1.0), std::clamp(interval.hi, 0.0, 1.0)};
}

// Attribute index holding the second coordinate of a pair; a padded final
// pair repeats the last attribute.
std::size_t second_attribute(std::size_t pair_index, std::size_t dimension) {
    return std::min(2 * pair_index + 1, dimension - 1);
}

void check_pair(std::size_t pair_index, std::size_t dimension) {
    if (pair_index >= pair_count(dimension)) {
        throw ContractError("pair index " + std::to_string(pair_index) + " out of range for " +
                            std::to_string(dimension) + "-D data (" + std::to_string(pair_count(dimension)) +
                            " pairs)");
    }
}

}  // namespace

Hyperblock::Hyperblock(std::vector<Interval> bounds) : bounds_(std::move(bounds)) {
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        check_interval(bounds_[i], "hyperblock attribute " + std::to_string(i));
        bounds_[i] = clamp_unit(bounds_[i]);
    }
}

Hyperblock Hyperblock::full(std::size_t dimension) {
    return Hyperblock(std::vector<Interval>(dimension, Interval{0.0, 1.0}));
}

Hyperblock Hyperblock::around(std::span<const double> center, std::span<const double> minus,
                              std::span<const double> plus) {
    if (minus.size() != center.size() || plus.size() != center.size()) {
        throw ContractError("hyperblock deltas must match the center dimensionality");
    }
    std::vector<Interval> bounds;
    bounds.reserve(center.size());
    for (std::size_t i = 0; i < center.size(); ++i) {
        if (minus[i] < 0.0 || plus[i] < 0.0) {
            throw ValidationError("hyperblock deltas must be non-negative");
        }
        bounds.push_back({center[i] - minus[i], center[i] + plus[i]});
    }
    return Hyperblock(std::move(bounds));
}

std::vector<double> Hyperblock::lower() const {
    std::vector<double> out;
    out.reserve(bounds_.size());
    for (const auto& b : bounds_) {
        out.push_back(b.lo);
    }
    return out;
}

std::vector<double> Hyperblock::upper() const {
    std::vector<double> out;
    out.reserve(bounds_.size());
    for (const auto& b : bounds_) {
        out.push_back(b.hi);
    }
    return out;
}

bool Hyperblock::contains(const Hyperblock& other) const {
    if (other.dimension() != dimension()) {
        throw ContractError("hyperblock dimensionality mismatch");
    }
    for (std::size_t i = 0; i < bounds_.size(); ++i) {
        if (!bounds_[i].contains(other.bounds_[i])) {
            return false;
        }
    }
    return true;
}

bool hyperblock_contains(const Hyperblock& block, const CaseRecord& x) {
    if (block.dimension() != x.dimension()) {
        throw ContractError("hyperblock has " + std::to_string(block.dimension()) + " attributes, case has " +
                            std::to_string(x.dimension()));
    }
    for (std::size_t i = 0; i < block.dimension(); ++i) {
        if (!block.bounds()[i].contains(x.values[i])) {
            return false;
        }
    }
    return true;
}

void RectangleRule::validate() const {
    for (std::size_t r = 0; r < rectangles.size(); ++r) {
        const auto& box = rectangles[r];
        for (std::size_t s = 0; s < r; ++s) {
            if (rectangles[s].pair == box.pair) {
                throw ValidationError("pair " + std::to_string(box.pair) + " appears in more than one rectangle");
            }
        }
        const std::string what = "rectangle on pair " + std::to_string(box.pair);
        check_interval(box.x, what + " (x)");
        check_interval(box.y, what + " (y)");
        if (box.x.lo < 0.0 || box.x.hi > 1.0 || box.y.lo < 0.0 || box.y.hi > 1.0) {
            throw ValidationError(what + " lies outside [0, 1]^2");
        }
    }
}

Hyperblock RectangleRule::to_hyperblock(std::size_t dimension) const {
    validate();
    std::vector<Interval> bounds(dimension, Interval{0.0, 1.0});
    for (const auto& box : rectangles) {
        check_pair(box.pair, dimension);
        const std::size_t first = 2 * box.pair;
        const std::size_t second = second_attribute(box.pair, dimension);
        bounds[first] = box.x;
        if (second == first) {
            const Interval both{std::max(box.x.lo, box.y.lo), std::min(box.x.hi, box.y.hi)};
            if (both.lo > both.hi) {
                throw ValidationError("rectangle on padded pair " + std::to_string(box.pair) +
                                      " has disjoint x and y intervals");
            }
            bounds[first] = both;
        } else {
            bounds[second] = box.y;
        }
    }
    return Hyperblock(std::move(bounds));
}

const std::string& predicted_class(const Rule& rule) noexcept {
    return std::visit([](const auto& r) -> const std::string& { return r.predicted_class; }, rule);
}

Hyperblock rule_region(const Rule& rule, std::size_t dimension) {
    if (const auto* rect = std::get_if<RectangleRule>(&rule)) {
        return rect->to_hyperblock(dimension);
    }
    const auto& block = std::get<HyperblockRule>(rule).block;
    if (block.dimension() != dimension) {
        throw ContractError("hyperblock rule has " + std::to_string(block.dimension()) + " attributes, data has " +
                            std::to_string(dimension));
    }
    return block;
}

RuleStats coverage_stats(const Dataset& dataset, std::span<const std::uint8_t> covered,
                         std::string_view predicted_class, bool with_accuracy) {
    if (covered.size() != dataset.size()) {
        throw ContractError("coverage mask size does not match the dataset");
    }
    const auto labels = dataset.class_labels();
    const auto predicted_index = dataset.class_index(predicted_class);
    std::vector<std::size_t> counts(labels.size(), 0);
    Confusion confusion;
    const auto classes = dataset.case_classes();
    for (std::size_t j = 0; j < covered.size(); ++j) {
        const bool positive = predicted_index && classes[j] == *predicted_index;
        if (covered[j] != 0) {
            ++counts[classes[j]];
            ++(positive ? confusion.true_positive : confusion.false_positive);
        } else {
            ++(positive ? confusion.false_negative : confusion.true_negative);
        }
    }

    RuleStats stats;
    stats.predicted_class = std::string(predicted_class);
    stats.total = dataset.size();
    for (std::size_t c = 0; c < labels.size(); ++c) {
        stats.covered += counts[c];
        stats.per_class.push_back({labels[c], counts[c]});
    }
    stats.empty = stats.covered == 0;
    if (!stats.empty) {
        stats.purity = static_cast<double>(confusion.true_positive) / static_cast<double>(stats.covered);
    }
    if (with_accuracy) {
        stats.accuracy = static_cast<double>(confusion.true_positive + confusion.true_negative) /
                         static_cast<double>(stats.total);
        stats.confusion = confusion;
    }
    return stats;
}

std::vector<std::uint8_t> coverage_mask(const Dataset& dataset, const Hyperblock& block) {
    if (block.dimension() != dataset.dimension()) {
        throw ContractError("hyperblock has " + std::to_string(block.dimension()) + " attributes, data has " +
                            std::to_string(dataset.dimension()));
    }
    std::vector<std::uint8_t> mask(dataset.size());
    kernels::box_mask(dataset.columns(), block.lower(), block.upper(), mask);
    return mask;
}

std::vector<double> scores(const LinearModel& model, const Dataset& dataset) {
    if (model.dimension() != dataset.dimension()) {
        throw ContractError("model has " + std::to_string(model.dimension()) + " coefficients, data has " +
                            std::to_string(dataset.dimension()) + " attributes");
    }
    std::vector<double> out(dataset.size());
    kernels::linear_scores(dataset.columns(), model.normalized_coefficients(), out);
    return out;
}

std::vector<std::uint8_t> discriminant_mask(const LinearModel& model, const Dataset& dataset) {
    const double threshold = model.require_threshold();
    const auto f = scores(model, dataset);
    std::vector<std::uint8_t> mask(f.size());
    kernels::threshold_mask(f, threshold, mask);
    return mask;
}

RuleStats evaluate_rectangle_rule(const RectangleRule& rule, const Dataset& dataset) {
    return evaluate_rule(Rule{rule}, dataset);
}

RuleStats evaluate_rule(const Rule& rule, const Dataset& dataset) {
    const auto mask = coverage_mask(dataset, rule_region(rule, dataset.dimension()));
    return coverage_stats(dataset, mask, predicted_class(rule), false);
}

RuleStats apply_discrimination_rule(const LinearModel& model, const Dataset& dataset,
                                    std::string_view positive_class) {
    const auto mask = discriminant_mask(model, dataset);
    return coverage_stats(dataset, mask, positive_class, true);
}

RuleStats evaluate_rule_with_discriminant(const Rule& rule, const LinearModel& model, const Dataset& dataset) {
    auto mask = coverage_mask(dataset, rule_region(rule, dataset.dimension()));
    const auto selected = discriminant_mask(model, dataset);
    for (std::size_t j = 0; j < mask.size(); ++j) {
        mask[j] &= selected[j];
    }
    return coverage_stats(dataset, mask, predicted_class(rule), false);
}

Rule refine_rule(const Rule& rule, std::size_t pair_index, Interval x, Interval y) {
    check_interval(x, "refined box (x)");
    check_interval(y, "refined box (y)");
    if (x.lo < 0.0 || x.hi > 1.0 || y.lo < 0.0 || y.hi > 1.0) {
        throw ValidationError("refined box lies outside [0, 1]^2");
    }
    if (const auto* rect = std::get_if<RectangleRule>(&rule)) {
        RectangleRule out = *rect;
        const auto it = std::find_if(out.rectangles.begin(), out.rectangles.end(),
                                     [&](const PairBox& b) { return b.pair == pair_index; });
        if (it != out.rectangles.end()) {
            it->x = x;
            it->y = y;
        } else {
            out.rectangles.push_back({pair_index, x, y});
        }
        return out;
    }
    const auto& hb = std::get<HyperblockRule>(rule);
    const std::size_t n = hb.block.dimension();
    check_pair(pair_index, n);
    auto bounds = hb.block.bounds();
    const std::size_t first = 2 * pair_index;
    const std::size_t second = second_attribute(pair_index, n);
    bounds[first] = x;
    if (second == first) {
        bounds[first] = {std::max(x.lo, y.lo), std::min(x.hi, y.hi)};
    } else {
        bounds[second] = y;
    }
    return HyperblockRule{Hyperblock(std::move(bounds)), hb.predicted_class};
}

std::pair<double, double> regression_interval(const Hyperblock& block, const LinearModel& model) {
    if (block.dimension() != model.dimension()) {
        throw ContractError("hyperblock and model dimensionality differ");
    }
    const auto& a = model.normalized_coefficients();
    double f1 = 0.0;
    double f2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto [lo, hi] = block.bounds()[i];
        if (a[i] >= 0.0) {
            f1 += a[i] * lo;
            f2 += a[i] * hi;
        } else {
            f1 += a[i] * hi;
            f2 += a[i] * lo;
        }
    }
    return {f1, f2};
}

double RegressionPlane::value_at(double u, double v) const noexcept {
    const auto& c = corner_values;
    return c[0] * (1.0 - u) * (1.0 - v) + c[1] * (1.0 - u) * v + c[2] * u * (1.0 - v) + c[3] * u * v;
}

RegressionPlane build_regression_plane(const LinearModel& model, const CaseRecord& x, std::size_t cube_index) {
    const std::size_t n = x.dimension();
    if (model.dimension() != n) {
        throw ContractError("regression plane: model and case dimensionality differ");
    }
    check_pair(cube_index, n);
    RegressionPlane plane;
    plane.cube_index = cube_index;
    plane.fixed_point = strip_padding(x);
    const std::size_t first = 2 * cube_index;
    const bool has_second = first + 1 < n;
    constexpr std::array<std::array<double, 2>, 4> corners{{{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}};
    for (std::size_t c = 0; c < corners.size(); ++c) {
        auto values = plane.fixed_point.values;
        values[first] = corners[c][0];
        if (has_second) {
            values[first + 1] = corners[c][1];
        }
        plane.corner_values[c] = evaluate(model.normalized_coefficients(), values);
    }
    return plane;
}

ProbeResult probe(const LinearModel& model, const CaseRecord& x, std::size_t cube_index, double delta_a,
                  double delta_b) {
    const std::size_t n = x.dimension();
    if (model.dimension() != n) {
        throw ContractError("probe: model and case dimensionality differ");
    }
    check_pair(cube_index, n);
    auto values = strip_padding(x).values;
    ProbeResult result;
    const auto shift = [&](std::size_t i, double delta) {
        const double moved = values[i] + delta;
        const double clamped = std::clamp(moved, 0.0, 1.0);
        result.clamped = result.clamped || clamped != moved;
        values[i] = clamped;
    };
    const std::size_t first = 2 * cube_index;
    shift(first, delta_a);
    if (first + 1 < n) {
        shift(first + 1, delta_b);
    }
    result.value = evaluate(model.normalized_coefficients(), values);
    return result;
}

ResidualReport residuals_on_plane(const LinearModel& model, const Dataset& dataset, std::size_t cube_index,
                                  const CaseRecord& reference, double tolerance) {
    if (!dataset.has_target()) {
        throw ConfigurationError("dataset has no numeric target column");
    }
    const RegressionPlane plane = build_regression_plane(model, reference, cube_index);
    const std::size_t n = dataset.dimension();
    const std::size_t first = 2 * cube_index;
    const std::size_t second = second_attribute(cube_index, n);
    ResidualReport report;
    for (const auto& c : dataset.cases()) {
        bool shares = true;
        for (std::size_t i = 0; i < n && shares; ++i) {
            if (i != first && i != second) {
                shares = std::abs(c.values[i] - plane.fixed_point.values[i]) <= tolerance;
            }
        }
        if (!shares) {
            report.excluded.push_back(c.id);
            continue;
        }
        const double u = c.values[first];
        const double v = second == first ? 0.0 : c.values[second];
        const double predicted = plane.value_at(u, v);
        report.residuals.push_back({c.id, predicted, *c.target, *c.target - predicted});
    }
    return report;
}

std::vector<RefinementStep> shrink_to_purity(const Dataset& dataset, std::span<const std::uint8_t> selection,
                                             std::size_t pair_index, std::string_view target_class) {
    const std::size_t n = dataset.dimension();
    check_pair(pair_index, n);
    if (selection.size() != dataset.size()) {
        throw ContractError("selection mask size does not match the dataset");
    }
    const auto target = dataset.class_index(target_class);
    if (!target) {
        throw ValidationError("class '" + std::string(target_class) + "' is not in the dataset");
    }
    const auto xs = dataset.columns().column(2 * pair_index);
    const auto ys = dataset.columns().column(second_attribute(pair_index, n));
    const auto classes = dataset.case_classes();

    Interval bx{0.0, 1.0};
    Interval by{0.0, 1.0};
    std::vector<RefinementStep> steps;
    std::vector<std::uint8_t> mask(dataset.size());
    for (;;) {
        for (std::size_t j = 0; j < mask.size(); ++j) {
            mask[j] = static_cast<std::uint8_t>(selection[j] != 0 && bx.contains(xs[j]) && by.contains(ys[j]));
        }
        steps.push_back({bx, by, coverage_stats(dataset, mask, target_class, false)});
        const RuleStats& stats = steps.back().stats;
        if (stats.empty || stats.purity == 1.0) {
            break;
        }

        // Candidate moves: each side steps past the covered cases sitting on it.
        struct Move {
            bool valid = false;
            double bound = 0.0;
            std::size_t lost_target = 0;
            std::size_t lost_other = 0;
        };
        std::array<Move, 4> moves;  // x.lo, x.hi, y.lo, y.hi
        for (int side = 0; side < 4; ++side) {
            const auto values = side < 2 ? xs : ys;
            const bool low = side % 2 == 0;
            double extreme = low ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < mask.size(); ++j) {
                if (mask[j] != 0) {
                    extreme = low ? std::min(extreme, values[j]) : std::max(extreme, values[j]);
                }
            }
            Move move;
            double next = low ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < mask.size(); ++j) {
                if (mask[j] == 0) {
                    continue;
                }
                if (values[j] == extreme) {
                    ++(classes[j] == *target ? move.lost_target : move.lost_other);
                } else {
                    next = low ? std::min(next, values[j]) : std::max(next, values[j]);
                }
            }
            move.valid = std::isfinite(next);
            move.bound = next;
            moves[static_cast<std::size_t>(side)] = move;
        }

        int best = -1;
        double best_score = -1.0;
        for (int side = 0; side < 4; ++side) {
            const Move& m = moves[static_cast<std::size_t>(side)];
            if (!m.valid) {
                continue;
            }
            const double score = static_cast<double>(m.lost_other) / static_cast<double>(m.lost_target + 1);
            const bool better =
                best < 0 || score > best_score ||
                (score == best_score && m.lost_target < moves[static_cast<std::size_t>(best)].lost_target);
            if (better) {
                best = side;
                best_score = score;
            }
        }
        if (best < 0) {
            break;  // every covered case shares one point of the pair: cannot separate here
        }
        const double bound = moves[static_cast<std::size_t>(best)].bound;
        switch (best) {
            case 0: bx.lo = bound; break;
            case 1: bx.hi = bound; break;
            case 2: by.lo = bound; break;
            default: by.hi = bound; break;
        }
    }
    return steps;
}

}  // namespace glc3d
