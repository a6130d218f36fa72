#pragma once

#include "glc3d/dataset.hpp"
#include "glc3d/linear_model.hpp"
#include "glc3d/rules.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace glc3d {

/// Rule file contents. `model_ref` names a model file (relative paths are
/// resolved against the rule file's directory) used when no model is given
/// explicitly.
struct RuleDocument {
    std::vector<Rule> rules;
    std::optional<std::string> model_ref;

    friend bool operator==(const RuleDocument&, const RuleDocument&) = default;
};

[[nodiscard]] nlohmann::json rule_to_json(const Rule& rule);
/// Throws FieldError naming the offending field, prefixed with `path`.
[[nodiscard]] Rule rule_from_json(const nlohmann::json& value, const std::string& path);
[[nodiscard]] std::vector<Rule> rules_from_json(const nlohmann::json& array, const std::string& path);

[[nodiscard]] std::string write_rule_document(const RuleDocument& document);
[[nodiscard]] RuleDocument read_rule_document(std::string_view text);
void save_rule_file(const std::filesystem::path& path, const RuleDocument& document);
[[nodiscard]] RuleDocument load_rule_file(const std::filesystem::path& path);

[[nodiscard]] nlohmann::json model_to_json(const LinearModel& model);
/// Accepts {"raw_coefficients": [...], "threshold"?, "positive_class"?}; other
/// derived fields are ignored.
[[nodiscard]] LinearModel model_from_json(const nlohmann::json& value, const std::string& path);

[[nodiscard]] nlohmann::json stats_to_json(const RuleStats& stats);

/// Everything `eval` reports: per-rule stats, the discriminant on its own
/// (when the model has a threshold and a positive class), and each rule
/// restricted to the discriminant's class-1 side.
struct EvaluationReport {
    std::vector<RuleStats> rules;
    std::optional<RuleStats> discriminant;
    std::vector<RuleStats> rules_with_discriminant;
};

[[nodiscard]] EvaluationReport evaluate_all(const Dataset& dataset, const std::vector<Rule>& rules,
                                            const LinearModel* model);
[[nodiscard]] nlohmann::json report_to_json(const EvaluationReport& report);

}  // namespace glc3d
