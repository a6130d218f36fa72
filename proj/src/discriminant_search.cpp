#include "glc3d/discriminant_search.hpp"

#include "glc3d/error.hpp"
#include "glc3d/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace glc3d {

ThresholdChoice best_threshold(std::span<const double> scores, std::span<const std::uint8_t> positive) {
    if (scores.empty() || scores.size() != positive.size()) {
        throw ContractError("best_threshold: scores and labels must be non-empty and equally sized");
    }
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return scores[l] < scores[r]; });

    const std::size_t positives = static_cast<std::size_t>(std::count_if(
        positive.begin(), positive.end(), [](std::uint8_t p) { return p != 0; }));
    const std::size_t negatives = scores.size() - positives;

    // Everything at or above min f is class 1.
    ThresholdChoice best{scores[order.front()], positives, 0.0};
    std::size_t negatives_below = 0;
    std::size_t positives_below = 0;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        ++(positive[order[k]] != 0 ? positives_below : negatives_below);
        const double lo = scores[order[k]];
        const double hi = scores[order[k + 1]];
        if (!(lo < hi)) {
            continue;
        }
        const std::size_t correct = (positives - positives_below) + negatives_below;
        if (correct > best.correct) {
            best = {lo + (hi - lo) / 2.0, correct, hi - lo};
        }
    }
    if (negatives > best.correct) {
        best = {scores[order.back()] + 1.0, negatives, 0.0};
    }
    return best;
}

namespace {

struct Objective {
    std::size_t correct = 0;
    /// Minus the summed distance of misclassified scores from the threshold,
    /// per unit of max |a_i|.
    double separation = 0.0;

    [[nodiscard]] bool better_than(const Objective& other) const noexcept {
        if (correct != other.correct) {
            return correct > other.correct;
        }
        return separation > other.separation + 1e-12;
    }
};

class Evaluator {
public:
    Evaluator(const Dataset& dataset, std::span<const std::uint8_t> positive)
        : dataset_(dataset), positive_(positive), scores_(dataset.size()) {}

    Objective operator()(std::span<const double> a) {
        kernels::linear_scores(dataset_.columns(), a, scores_);
        last_ = best_threshold(scores_, positive_);
        double largest = 0.0;
        for (double v : a) {
            largest = std::max(largest, std::abs(v));
        }
        double loss = 0.0;
        for (std::size_t j = 0; j < scores_.size(); ++j) {
            const double d = scores_[j] - last_.threshold;
            if (positive_[j] != 0 && d < 0.0) {
                loss -= d;
            } else if (positive_[j] == 0 && d >= 0.0) {
                loss += d;
            }
        }
        const double separation = largest > 0.0 ? -loss / largest : 0.0;
        return {last_.correct, separation};
    }

    [[nodiscard]] const ThresholdChoice& last_choice() const noexcept { return last_; }

private:
    const Dataset& dataset_;
    std::span<const std::uint8_t> positive_;
    std::vector<double> scores_;
    ThresholdChoice last_;
};

// Fisher-Yates driven by raw engine output; std::shuffle's use of the engine
// is implementation-defined, which would make seeds non-portable.
void permute(std::vector<std::size_t>& order, std::mt19937_64& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(order[i - 1], order[j]);
    }
}

}  // namespace

DiscriminantResult search_discriminant(const Dataset& dataset, std::string_view target_class,
                                       const SearchParams& params) {
    if (!dataset.is_normalized()) {
        throw ValidationError("search_discriminant requires a normalized dataset");
    }
    const auto target = dataset.class_index(target_class);
    if (!target) {
        throw ValidationError("class '" + std::string(target_class) + "' has no cases in the dataset");
    }
    std::vector<std::uint8_t> positive(dataset.size());
    for (std::size_t j = 0; j < positive.size(); ++j) {
        positive[j] = static_cast<std::uint8_t>(dataset.case_classes()[j] == *target);
    }

    const std::size_t n = dataset.dimension();
    Evaluator evaluate_objective(dataset, positive);
    std::vector<double> a(n, 1.0);
    Objective best = evaluate_objective(a);
    std::mt19937_64 rng(params.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (int level = 0; level <= params.halvings && best.correct < dataset.size(); ++level) {
        const double step = std::ldexp(params.initial_step, -level);
        for (std::size_t pass = 0; pass < params.max_passes_per_step; ++pass) {
            permute(order, rng);
            bool improved = false;
            for (std::size_t i : order) {
                for (double direction : {1.0, -1.0}) {
                    std::vector<double> candidate = a;
                    candidate[i] = std::clamp(a[i] + direction * step, -1.0, 1.0);
                    if (candidate[i] == a[i] ||
                        std::all_of(candidate.begin(), candidate.end(), [](double v) { return v == 0.0; })) {
                        continue;
                    }
                    const Objective trial = evaluate_objective(candidate);
                    if (trial.better_than(best)) {
                        a = std::move(candidate);
                        best = trial;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) {
                break;
            }
        }
    }

    // Rescale so max |a_i| = 1, then pick the threshold on the final scores.
    LinearModel model = LinearModel::from_coefficients(a);
    model = LinearModel::from_coefficients(model.normalized_coefficients());
    evaluate_objective(model.normalized_coefficients());
    model = model.with_threshold(evaluate_objective.last_choice().threshold)
                .with_positive_class(std::string(target_class));
    RuleStats stats = apply_discrimination_rule(model, dataset, target_class);
    return {std::move(model), std::move(stats)};
}

}  // namespace glc3d
