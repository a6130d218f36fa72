#include "glc3d/rule_io.hpp"

#include "glc3d/canonical_json.hpp"
#include "glc3d/error.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace glc3d {

using nlohmann::json;

namespace {

const json& require_field(const json& object, const char* key, const std::string& path) {
    if (!object.is_object()) {
        throw FieldError(path, "expected an object");
    }
    const auto it = object.find(key);
    if (it == object.end()) {
        throw FieldError(path + "." + key, "missing");
    }
    return *it;
}

double number_at(const json& value, const std::string& path) {
    if (!value.is_number()) {
        throw FieldError(path, "expected a number");
    }
    const double v = value.get<double>();
    if (!std::isfinite(v)) {
        throw FieldError(path, "must be finite");
    }
    return v;
}

std::string string_at(const json& value, const std::string& path) {
    if (!value.is_string()) {
        throw FieldError(path, "expected a string");
    }
    return value.get<std::string>();
}

std::size_t index_at(const json& value, const std::string& path) {
    if (!value.is_number_integer() || value.get<long long>() < 0) {
        throw FieldError(path, "expected a non-negative integer");
    }
    return value.get<std::size_t>();
}

Interval interval_at(const json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 2) {
        throw FieldError(path, "expected [lo, hi]");
    }
    const Interval interval{number_at(value[0], path + "[0]"), number_at(value[1], path + "[1]")};
    if (interval.lo > interval.hi) {
        throw FieldError(path, "lower bound exceeds upper bound");
    }
    return interval;
}

json interval_json(const Interval& interval) {
    return json::array({interval.lo, interval.hi});
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

json rule_to_json(const Rule& rule) {
    if (const auto* rect = std::get_if<RectangleRule>(&rule)) {
        json boxes = json::array();
        for (const auto& box : rect->rectangles) {
            boxes.push_back({{"pair", box.pair}, {"x", interval_json(box.x)}, {"y", interval_json(box.y)}});
        }
        return {{"kind", "rectangles"}, {"predicted_class", rect->predicted_class}, {"rectangles", boxes}};
    }
    const auto& hb = std::get<HyperblockRule>(rule);
    json bounds = json::array();
    for (const auto& interval : hb.block.bounds()) {
        bounds.push_back(interval_json(interval));
    }
    return {{"kind", "hyperblock"}, {"predicted_class", hb.predicted_class}, {"bounds", bounds}};
}

Rule rule_from_json(const json& value, const std::string& path) {
    const std::string kind = string_at(require_field(value, "kind", path), path + ".kind");
    const std::string predicted =
        string_at(require_field(value, "predicted_class", path), path + ".predicted_class");
    if (kind == "rectangles") {
        const json& boxes = require_field(value, "rectangles", path);
        if (!boxes.is_array()) {
            throw FieldError(path + ".rectangles", "expected an array");
        }
        RectangleRule rule;
        rule.predicted_class = predicted;
        for (std::size_t i = 0; i < boxes.size(); ++i) {
            const std::string p = path + ".rectangles[" + std::to_string(i) + "]";
            PairBox box;
            box.pair = index_at(require_field(boxes[i], "pair", p), p + ".pair");
            box.x = interval_at(require_field(boxes[i], "x", p), p + ".x");
            box.y = interval_at(require_field(boxes[i], "y", p), p + ".y");
            rule.rectangles.push_back(box);
        }
        try {
            rule.validate();
        } catch (const ValidationError& e) {
            throw FieldError(path + ".rectangles", e.what());
        }
        return rule;
    }
    if (kind == "hyperblock") {
        const json& bounds = require_field(value, "bounds", path);
        if (!bounds.is_array() || bounds.empty()) {
            throw FieldError(path + ".bounds", "expected a non-empty array of [lo, hi]");
        }
        std::vector<Interval> intervals;
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            intervals.push_back(interval_at(bounds[i], path + ".bounds[" + std::to_string(i) + "]"));
        }
        return HyperblockRule{Hyperblock(std::move(intervals)), predicted};
    }
    throw FieldError(path + ".kind", "unknown rule kind '" + kind + "' (valid: rectangles, hyperblock)");
}

std::vector<Rule> rules_from_json(const json& array, const std::string& path) {
    if (!array.is_array()) {
        throw FieldError(path, "expected an array");
    }
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < array.size(); ++i) {
        rules.push_back(rule_from_json(array[i], path + "[" + std::to_string(i) + "]"));
    }
    return rules;
}

std::string write_rule_document(const RuleDocument& document) {
    json rules = json::array();
    for (const auto& rule : document.rules) {
        rules.push_back(rule_to_json(rule));
    }
    json doc = {{"format_version", 1}, {"rules", rules}};
    if (document.model_ref) {
        doc["model"] = *document.model_ref;
    }
    return canonical_dump(doc) + "\n";
}

RuleDocument read_rule_document(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("rule document is not valid JSON: ") + e.what());
    }
    const json& version = require_field(doc, "format_version", "");
    if (!version.is_number_integer() || version.get<long long>() != 1) {
        throw FieldError("format_version", "unsupported rule format_version " + version.dump() + " (supported: 1)");
    }
    RuleDocument out;
    out.rules = rules_from_json(require_field(doc, "rules", ""), "rules");
    if (const auto it = doc.find("model"); it != doc.end() && !it->is_null()) {
        out.model_ref = string_at(*it, "model");
    }
    return out;
}

void save_rule_file(const std::filesystem::path& path, const RuleDocument& document) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << write_rule_document(document);
}

RuleDocument load_rule_file(const std::filesystem::path& path) {
    return read_rule_document(read_file(path));
}

json model_to_json(const LinearModel& model) {
    json out = {{"raw_coefficients", model.raw_coefficients()},
                {"normalized_coefficients", model.normalized_coefficients()},
                {"angles", model.angles()},
                {"scale", model.scale()}};
    out["threshold"] = model.threshold() ? json(*model.threshold()) : json(nullptr);
    out["positive_class"] = model.positive_class() ? json(*model.positive_class()) : json(nullptr);
    return out;
}

LinearModel model_from_json(const json& value, const std::string& path) {
    const json& raw = require_field(value, "raw_coefficients", path);
    if (!raw.is_array() || raw.empty()) {
        throw FieldError(path + ".raw_coefficients", "expected a non-empty array of numbers");
    }
    std::vector<double> coefficients;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        coefficients.push_back(number_at(raw[i], path + ".raw_coefficients[" + std::to_string(i) + "]"));
    }
    LinearModel model = [&] {
        try {
            return LinearModel::from_coefficients(std::move(coefficients));
        } catch (const ValidationError& e) {
            throw FieldError(path + ".raw_coefficients", e.what());
        }
    }();
    if (const auto it = value.find("threshold"); it != value.end() && !it->is_null()) {
        model = model.with_threshold(number_at(*it, path + ".threshold"));
    }
    if (const auto it = value.find("positive_class"); it != value.end() && !it->is_null()) {
        model = model.with_positive_class(string_at(*it, path + ".positive_class"));
    }
    return model;
}

json stats_to_json(const RuleStats& stats) {
    json per_class = json::array();
    for (const auto& c : stats.per_class) {
        per_class.push_back({{"label", c.label}, {"count", c.count}});
    }
    json out = {{"predicted_class", stats.predicted_class},
                {"total", stats.total},
                {"covered", stats.covered},
                {"per_class", per_class},
                {"purity", stats.purity},
                {"empty", stats.empty}};
    out["accuracy"] = stats.accuracy ? json(*stats.accuracy) : json(nullptr);
    if (stats.confusion) {
        const auto& c = *stats.confusion;
        out["confusion"] = {{"true_positive", c.true_positive},
                            {"false_positive", c.false_positive},
                            {"true_negative", c.true_negative},
                            {"false_negative", c.false_negative}};
    } else {
        out["confusion"] = nullptr;
    }
    return out;
}

EvaluationReport evaluate_all(const Dataset& dataset, const std::vector<Rule>& rules, const LinearModel* model) {
    EvaluationReport report;
    for (const auto& rule : rules) {
        report.rules.push_back(evaluate_rule(rule, dataset));
    }
    if (model != nullptr && model->threshold()) {
        if (model->positive_class()) {
            report.discriminant = apply_discrimination_rule(*model, dataset, *model->positive_class());
        }
        for (const auto& rule : rules) {
            report.rules_with_discriminant.push_back(evaluate_rule_with_discriminant(rule, *model, dataset));
        }
    }
    return report;
}

json report_to_json(const EvaluationReport& report) {
    json rules = json::array();
    for (const auto& s : report.rules) {
        rules.push_back(stats_to_json(s));
    }
    json gated = json::array();
    for (const auto& s : report.rules_with_discriminant) {
        gated.push_back(stats_to_json(s));
    }
    return {{"rules", rules},
            {"discriminant", report.discriminant ? stats_to_json(*report.discriminant) : json(nullptr)},
            {"rules_with_discriminant", gated}};
}

}  // namespace glc3d
