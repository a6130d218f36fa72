#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace glc3d {

/// Base class of every error raised by the library. The kind lets callers
/// (CLI, HTTP layer) map failures without a cascade of catch clauses.
class Error : public std::runtime_error {
public:
    enum class Kind { parse, configuration, validation, contract, lookup, io };

    Error(Kind kind, const std::string& message);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

[[nodiscard]] std::string_view to_string(Error::Kind kind) noexcept;

class ParseError : public Error {
public:
    /// row and column are 1-based; 0 means "not applicable".
    ParseError(const std::string& message, std::size_t row = 0, std::size_t column = 0);

    [[nodiscard]] std::size_t row() const noexcept { return row_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class ConfigurationError : public Error {
public:
    explicit ConfigurationError(const std::string& message) : Error(Kind::configuration, message) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message) : Error(Kind::validation, message) {}
};

/// Validation failure tied to one field of a structured document, e.g.
/// "rules[0].rectangles[1].x".
class FieldError : public ValidationError {
public:
    FieldError(std::string field, const std::string& message)
        : ValidationError(field + ": " + message), field_(std::move(field)), detail_(message) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }
    [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

private:
    std::string field_;
    std::string detail_;
};

/// Violated precondition (dimension mismatch, index out of range, ...).
class ContractError : public Error {
public:
    explicit ContractError(const std::string& message) : Error(Kind::contract, message) {}
};

class LookupError : public Error {
public:
    explicit LookupError(const std::string& message) : Error(Kind::lookup, message) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error(Kind::io, message) {}
};

}  // namespace glc3d
