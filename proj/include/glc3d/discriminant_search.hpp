#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"
#include "glc3d/rules.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace glc3d {

struct SearchParams {
    /// Permutes the coordinate visiting order of every pass.
    std::uint64_t seed = 1;
    double initial_step = 0.5;
    /// Step schedule is initial_step * 2^-k for k = 0..halvings.
    int halvings = 10;
    std::size_t max_passes_per_step = 64;
};

struct ThresholdChoice {
    double threshold = 0.0;
    /// Cases classified correctly under f >= threshold <=> positive.
    std::size_t correct = 0;
    /// Distance between the sorted scores straddling the threshold (0 at the ends).
    double gap = 0.0;
};

/// Best one-vs-rest threshold over the candidates min f, midpoints between
/// consecutive distinct scores, and max f + 1. First best wins.
[[nodiscard]] ThresholdChoice best_threshold(std::span<const double> scores, std::span<const std::uint8_t> positive);

struct DiscriminantResult {
    LinearModel model;
    RuleStats stats;
};

/// Coordinate descent over a in [-1, 1]^n, starting at all ones, maximizing
/// one-vs-rest accuracy for `target_class` (class 1 = f >= T). Deterministic
/// for a fixed seed. Requires a normalized dataset.
[[nodiscard]] DiscriminantResult search_discriminant(const Dataset& dataset, std::string_view target_class,
                                                     const SearchParams& params = {});

}  // namespace glc3d
