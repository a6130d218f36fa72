#include "glc3d/linear_model.hpp"

#include "glc3d/error.hpp"
#include "glc3d/number_format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace glc3d {

LinearModel LinearModel::from_coefficients(std::vector<double> raw) {
    if (raw.empty()) {
        throw ValidationError("linear model needs at least one coefficient");
    }
    double c_max = 0.0;
    for (double c : raw) {
        if (!std::isfinite(c)) {
            throw ValidationError("linear model coefficients must be finite");
        }
        c_max = std::max(c_max, std::abs(c));
    }
    if (c_max == 0.0) {
        throw ValidationError("all coefficients are zero: c_max is undefined");
    }
    LinearModel model;
    model.normalized_.reserve(raw.size());
    for (double c : raw) {
        // Division by the absolute max keeps a_i in [-1, 1] with at least one |a_i| = 1.
        model.normalized_.push_back(c / c_max);
    }
    model.angles_ = angles_from_coefficients(model.normalized_);
    model.raw_ = std::move(raw);
    model.scale_ = c_max;
    return model;
}

LinearModel LinearModel::with_threshold(double threshold) const {
    if (!std::isfinite(threshold)) {
        throw ValidationError("threshold must be finite");
    }
    LinearModel copy = *this;
    copy.threshold_ = threshold;
    return copy;
}

LinearModel LinearModel::with_positive_class(std::string label) const {
    LinearModel copy = *this;
    copy.positive_class_ = std::move(label);
    return copy;
}

double LinearModel::require_threshold() const {
    if (!threshold_) {
        throw ContractError("linear model has no threshold");
    }
    return *threshold_;
}

std::vector<double> angles_from_coefficients(std::span<const double> coefficients) {
    std::vector<double> out;
    out.reserve(coefficients.size());
    for (double a : coefficients) {
        if (!(std::abs(a) <= 1.0)) {
            throw ValidationError("coefficient " + format_double(a) + " is outside [-1, 1]");
        }
        out.push_back(std::acos(a));
    }
    return out;
}

double evaluate(std::span<const double> coefficients, std::span<const double> x) {
    if (coefficients.size() != x.size()) {
        throw ContractError("evaluate: model has " + std::to_string(coefficients.size()) + " coefficients, case has " +
                            std::to_string(x.size()) + " values");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += coefficients[i] * x[i];
    }
    return sum;
}

double evaluate(const LinearModel& model, const CaseRecord& x) {
    return evaluate(model.normalized_coefficients(), std::span(x.values).first(x.dimension()));
}

double contribution(const LinearModel& model, const CaseRecord& x, std::size_t pair_index) {
    const std::size_t n = x.dimension();
    if (model.dimension() != n) {
        throw ContractError("contribution: model has " + std::to_string(model.dimension()) +
                            " coefficients, case has " + std::to_string(n) + " values");
    }
    if (pair_index >= pair_count(n)) {
        throw ContractError("contribution: pair index " + std::to_string(pair_index) + " out of range [0, " +
                            std::to_string(pair_count(n)) + ")");
    }
    const auto& a = model.normalized_coefficients();
    const std::size_t first = 2 * pair_index;
    double sum = a[first] * x.values[first];
    if (first + 1 < n) {
        sum += a[first + 1] * x.values[first + 1];
    }
    return sum;
}

Decision classify(const LinearModel& model, const CaseRecord& x) {
    return evaluate(model, x) >= model.require_threshold() ? Decision::class1 : Decision::class2;
}

double scaled_threshold(const LinearModel& model, double raw_threshold) {
    return raw_threshold / model.scale();
}

namespace {

std::string join(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        out += format_double(values[i]);
    }
    return out;
}

std::vector<double> split_numbers(const std::string& text, std::size_t line, const std::string& key) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        const auto v = parse_double(token);
        if (!v) {
            throw ParseError("model key '" + key + "': '" + token + "' is not a finite number", line);
        }
        out.push_back(*v);
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

void check_close(const std::vector<double>& stored, const std::vector<double>& derived, const std::string& key) {
    if (stored.size() != derived.size()) {
        throw ValidationError("model key '" + key + "' has " + std::to_string(stored.size()) + " entries, expected " +
                              std::to_string(derived.size()));
    }
    for (std::size_t i = 0; i < stored.size(); ++i) {
        if (std::abs(stored[i] - derived[i]) > 1e-12) {
            throw ValidationError("model key '" + key + "' entry " + std::to_string(i) +
                                  " disagrees with the raw coefficients");
        }
    }
}

}  // namespace

std::string write_model(const LinearModel& model) {
    std::string out;
    out += "# glc3d linear model\n";
    out += "format_version = 1\n";
    out += "dimension = " + std::to_string(model.dimension()) + "\n";
    out += "raw_coefficients = " + join(model.raw_coefficients()) + "\n";
    out += "normalized_coefficients = " + join(model.normalized_coefficients()) + "\n";
    out += "angles = " + join(model.angles()) + "\n";
    out += "scale = " + format_double(model.scale()) + "\n";
    if (model.threshold()) {
        out += "threshold = " + format_double(*model.threshold()) + "\n";
    }
    if (model.positive_class()) {
        out += "positive_class = " + *model.positive_class() + "\n";
    }
    return out;
}

LinearModel read_model(std::string_view text) {
    std::map<std::string, std::pair<std::string, std::size_t>> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no);
        }
        std::string key = trim(t.substr(0, eq));
        if (!entries.try_emplace(key, trim(t.substr(eq + 1)), line_no).second) {
            throw ParseError("duplicate key '" + key + "'", line_no);
        }
    }

    static const char* const known[] = {"format_version", "dimension", "raw_coefficients", "normalized_coefficients",
                                        "angles",         "scale",     "threshold",        "positive_class"};
    for (const auto& [key, value] : entries) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw ParseError("unknown model key '" + key + "'", value.second);
        }
    }
    const auto version = entries.find("format_version");
    if (version == entries.end()) {
        throw ParseError("model document lacks format_version");
    }
    if (version->second.first != "1") {
        throw ParseError("unsupported model format_version '" + version->second.first + "' (supported: 1)",
                         version->second.second);
    }
    const auto raw_it = entries.find("raw_coefficients");
    if (raw_it == entries.end()) {
        throw ParseError("model document lacks raw_coefficients");
    }
    LinearModel model =
        LinearModel::from_coefficients(split_numbers(raw_it->second.first, raw_it->second.second, "raw_coefficients"));

    if (const auto it = entries.find("dimension"); it != entries.end()) {
        if (it->second.first != std::to_string(model.dimension())) {
            throw ValidationError("model dimension " + it->second.first + " does not match " +
                                  std::to_string(model.dimension()) + " raw coefficients");
        }
    }
    if (const auto it = entries.find("normalized_coefficients"); it != entries.end()) {
        check_close(split_numbers(it->second.first, it->second.second, it->first), model.normalized_coefficients(),
                    it->first);
    }
    if (const auto it = entries.find("angles"); it != entries.end()) {
        check_close(split_numbers(it->second.first, it->second.second, it->first), model.angles(), it->first);
    }
    if (const auto it = entries.find("scale"); it != entries.end()) {
        check_close(split_numbers(it->second.first, it->second.second, it->first), {model.scale()}, it->first);
    }
    if (const auto it = entries.find("threshold"); it != entries.end()) {
        const auto t = parse_double(it->second.first);
        if (!t) {
            throw ParseError("threshold is not a finite number", it->second.second);
        }
        model = model.with_threshold(*t);
    }
    if (const auto it = entries.find("positive_class"); it != entries.end()) {
        model = model.with_positive_class(it->second.first);
    }
    return model;
}

void save_model_file(const std::filesystem::path& path, const LinearModel& model) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    out << write_model(model);
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

LinearModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_model(buffer.str());
}

}  // namespace glc3d
