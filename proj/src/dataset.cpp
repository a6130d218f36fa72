#include "glc3d/dataset.hpp"

#include "glc3d/error.hpp"
#include "glc3d/number_format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace glc3d {

Dataset::Dataset(std::vector<std::string> attribute_names, std::vector<CaseRecord> cases,
                 std::optional<std::vector<AttributeRange>> normalization, std::optional<std::string> target_name)
    : attribute_names_(std::move(attribute_names)),
      cases_(std::move(cases)),
      normalization_(std::move(normalization)),
      target_name_(std::move(target_name)) {
    if (cases_.empty()) {
        throw ValidationError("dataset has no cases");
    }
    const std::size_t n = attribute_names_.size();
    if (n == 0) {
        throw ValidationError("dataset has no attributes");
    }
    if (normalization_ && normalization_->size() != n) {
        throw ValidationError("normalization metadata does not match the attribute count");
    }
    std::unordered_map<std::string, std::size_t> label_index;
    case_classes_.reserve(cases_.size());
    for (const auto& record : cases_) {
        if (record.values.size() != n || record.padding != 0) {
            throw ValidationError("case " + std::to_string(record.id) + " has " +
                                  std::to_string(record.values.size()) + " values, expected " + std::to_string(n));
        }
        for (double v : record.values) {
            if (!std::isfinite(v)) {
                throw ValidationError("case " + std::to_string(record.id) + " has a non-finite value");
            }
            if (normalization_ && (v < 0.0 || v > 1.0)) {
                throw ValidationError("case " + std::to_string(record.id) + " has a value outside [0, 1]");
            }
        }
        if (target_name_.has_value() != record.target.has_value()) {
            throw ValidationError("case " + std::to_string(record.id) + " target presence is inconsistent");
        }
        auto [it, inserted] = label_index.try_emplace(record.class_label, class_labels_.size());
        if (inserted) {
            class_labels_.push_back(record.class_label);
        }
        case_classes_.push_back(it->second);
    }

    columns_ = ColumnMatrix(cases_.size(), n);
    for (std::size_t row = 0; row < cases_.size(); ++row) {
        for (std::size_t col = 0; col < n; ++col) {
            columns_.at(row, col) = cases_[row].values[col];
        }
    }
}

std::optional<std::size_t> Dataset::class_index(std::string_view label) const {
    const auto it = std::find(class_labels_.begin(), class_labels_.end(), label);
    if (it == class_labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - class_labels_.begin());
}

namespace {

// One CSV record split into fields. `line` is the 1-based physical line the
// record starts on, used in error messages.
struct CsvRecord {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

class CsvReader {
public:
    CsvReader(std::istream& in, char delimiter) : in_(in), delimiter_(delimiter) {}

    bool next(CsvRecord& record) {
        record.fields.clear();
        int c = in_.get();
        while (c == '\n' || c == '\r') {  // skip blank lines
            if (c == '\n') {
                ++line_;
            }
            c = in_.get();
        }
        if (c == std::char_traits<char>::eof()) {
            return false;
        }
        record.line = line_;
        std::string field;
        bool quoted = false;
        bool after_quote = false;
        for (;; c = in_.get()) {
            if (c == std::char_traits<char>::eof()) {
                if (quoted) {
                    throw ParseError("unterminated quoted field", record.line, record.fields.size() + 1);
                }
                record.fields.push_back(std::move(field));
                return true;
            }
            const char ch = static_cast<char>(c);
            if (quoted) {
                if (ch == '"') {
                    if (in_.peek() == '"') {
                        field.push_back('"');
                        in_.get();
                    } else {
                        quoted = false;
                        after_quote = true;
                    }
                } else {
                    if (ch == '\n') {
                        ++line_;
                    }
                    field.push_back(ch);
                }
                continue;
            }
            if (ch == delimiter_) {
                record.fields.push_back(std::move(field));
                field.clear();
                after_quote = false;
            } else if (ch == '\n' || ch == '\r') {
                if (ch == '\r' && in_.peek() == '\n') {
                    in_.get();
                }
                ++line_;
                record.fields.push_back(std::move(field));
                return true;
            } else if (ch == '"') {
                if (!field.empty() || after_quote) {
                    throw ParseError("unexpected quote inside unquoted field", record.line, record.fields.size() + 1);
                }
                quoted = true;
            } else {
                if (after_quote) {
                    throw ParseError("characters after closing quote", record.line, record.fields.size() + 1);
                }
                field.push_back(ch);
            }
        }
    }

private:
    std::istream& in_;
    char delimiter_;
    std::size_t line_ = 1;
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_cell(std::string_view text, std::size_t line, std::size_t column, const std::string& column_name) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    if (!t.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (t.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ParseError("non-numeric value '" + std::string(text) + "' in column '" + column_name + "'", line,
                         column);
    }
    return value;
}

}  // namespace

Dataset load_csv(std::istream& source, const LoadConfig& config) {
    CsvReader reader(source, config.delimiter);
    CsvRecord header;
    if (!reader.next(header)) {
        throw ValidationError("empty dataset: missing header row");
    }
    for (auto& name : header.fields) {
        name = std::string(trim(name));
    }
    const auto find_column = [&](const std::string& name) -> std::optional<std::size_t> {
        const auto it = std::find(header.fields.begin(), header.fields.end(), name);
        if (it == header.fields.end()) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(it - header.fields.begin());
    };
    const auto class_column = find_column(config.class_column);
    if (!class_column) {
        throw ConfigurationError("class column '" + config.class_column + "' not found in header");
    }
    std::optional<std::size_t> target_column;
    if (config.target_column) {
        target_column = find_column(*config.target_column);
        if (!target_column) {
            throw ConfigurationError("target column '" + *config.target_column + "' not found in header");
        }
    }

    std::vector<std::string> attribute_names;
    std::vector<std::size_t> attribute_columns;
    for (std::size_t i = 0; i < header.fields.size(); ++i) {
        if (i != *class_column && (!target_column || i != *target_column)) {
            attribute_names.push_back(header.fields[i]);
            attribute_columns.push_back(i);
        }
    }

    std::vector<CaseRecord> cases;
    CsvRecord record;
    while (reader.next(record)) {
        if (record.fields.size() != header.fields.size()) {
            throw ParseError("expected " + std::to_string(header.fields.size()) + " fields, found " +
                                 std::to_string(record.fields.size()),
                             record.line);
        }
        CaseRecord c;
        c.id = cases.size();
        c.class_label = std::string(trim(record.fields[*class_column]));
        c.values.reserve(attribute_columns.size());
        for (std::size_t col : attribute_columns) {
            c.values.push_back(parse_cell(record.fields[col], record.line, col + 1, header.fields[col]));
        }
        if (target_column) {
            c.target = parse_cell(record.fields[*target_column], record.line, *target_column + 1,
                                  header.fields[*target_column]);
        }
        cases.push_back(std::move(c));
    }
    if (cases.empty()) {
        throw ValidationError("empty dataset: no data rows");
    }
    if (attribute_names.empty()) {
        throw ValidationError("dataset has no attribute columns");
    }
    return Dataset(std::move(attribute_names), std::move(cases), std::nullopt, config.target_column);
}

Dataset load_csv_file(const std::filesystem::path& path, const LoadConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return load_csv(in, config);
}

namespace {

std::string quote_if_needed(const std::string& s, char delimiter) {
    if (s.find_first_of(std::string{'"', '\n', '\r', delimiter}) == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, const Dataset& dataset, const LoadConfig& config) {
    const Dataset original = denormalize(dataset);
    const char d = config.delimiter;
    for (const auto& name : original.attribute_names()) {
        out << quote_if_needed(name, d) << d;
    }
    if (original.target_name()) {
        out << quote_if_needed(*original.target_name(), d) << d;
    }
    out << quote_if_needed(config.class_column, d) << '\n';
    for (const auto& c : original.cases()) {
        for (double v : c.values) {
            out << format_double(v) << d;
        }
        if (c.target) {
            out << format_double(*c.target) << d;
        }
        out << quote_if_needed(c.class_label, d) << '\n';
    }
}

Dataset normalize(const Dataset& dataset) {
    const std::size_t n = dataset.dimension();
    std::vector<AttributeRange> local(n);
    for (std::size_t col = 0; col < n; ++col) {
        const auto column = dataset.columns().column(col);
        const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
        local[col] = {*lo, *hi};
    }

    std::vector<CaseRecord> cases(dataset.cases().begin(), dataset.cases().end());
    for (auto& c : cases) {
        for (std::size_t col = 0; col < n; ++col) {
            const auto [lo, hi] = local[col];
            c.values[col] = hi > lo ? (c.values[col] - lo) / (hi - lo) : 0.5;
        }
    }

    // Compose with existing metadata so the original units stay recoverable.
    std::vector<AttributeRange> ranges = local;
    if (const auto& previous = dataset.normalization()) {
        for (std::size_t col = 0; col < n; ++col) {
            ranges[col] = {(*previous)[col].denormalize(local[col].min), (*previous)[col].denormalize(local[col].max)};
        }
    }
    return Dataset(dataset.attribute_names(), std::move(cases), std::move(ranges), dataset.target_name());
}

Dataset denormalize(const Dataset& dataset) {
    if (!dataset.is_normalized()) {
        return dataset;
    }
    const auto& ranges = *dataset.normalization();
    std::vector<CaseRecord> cases(dataset.cases().begin(), dataset.cases().end());
    for (auto& c : cases) {
        for (std::size_t col = 0; col < c.values.size(); ++col) {
            c.values[col] = ranges[col].denormalize(c.values[col]);
        }
    }
    return Dataset(dataset.attribute_names(), std::move(cases), std::nullopt, dataset.target_name());
}

CaseRecord pad_to_multiple(const CaseRecord& record, std::size_t k) {
    if (k != 2 && k != 3) {
        throw ContractError("pad_to_multiple: k must be 2 or 3, got " + std::to_string(k));
    }
    CaseRecord out = strip_padding(record);
    const std::size_t n = out.values.size();
    const std::size_t remainder = n % k;
    if (remainder == 0) {
        return out;
    }
    const std::size_t copies = k - remainder;
    if (copies > n) {
        // 1-D input with k = 3: repeat the single value.
        out.values.resize(n + copies, out.values.back());
    } else {
        const std::vector<double> tail(out.values.end() - static_cast<std::ptrdiff_t>(copies), out.values.end());
        out.values.insert(out.values.end(), tail.begin(), tail.end());
    }
    out.padding = copies;
    return out;
}

CaseRecord strip_padding(const CaseRecord& record) {
    CaseRecord out = record;
    out.values.resize(record.dimension());
    out.padding = 0;
    return out;
}

}  // namespace glc3d
