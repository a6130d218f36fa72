#include "glc3d/error.hpp"

namespace glc3d {

namespace {

std::string with_location(const std::string& message, std::size_t row, std::size_t column) {
    if (row == 0 && column == 0) {
        return message;
    }
    std::string out = message + " (row " + std::to_string(row);
    if (column != 0) {
        out += ", column " + std::to_string(column);
    }
    return out + ")";
}

}  // namespace

Error::Error(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

std::string_view to_string(Error::Kind kind) noexcept {
    switch (kind) {
        case Error::Kind::parse: return "parse error";
        case Error::Kind::configuration: return "configuration error";
        case Error::Kind::validation: return "validation error";
        case Error::Kind::contract: return "contract error";
        case Error::Kind::lookup: return "lookup error";
        case Error::Kind::io: return "i/o error";
    }
    return "error";
}

ParseError::ParseError(const std::string& message, std::size_t row, std::size_t column)
    : Error(Kind::parse, with_location(message, row, column)), row_(row), column_(column) {}

}  // namespace glc3d
