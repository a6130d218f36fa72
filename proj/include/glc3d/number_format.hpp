#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace glc3d {

/// Decimal text with 17 significant digits; always carries a '.' or an
/// exponent so the token reads back as floating point. Exact round-trip.
[[nodiscard]] std::string format_double(double value);

/// Strict parse of a complete token; nullopt on any trailing garbage or non-finite result.
[[nodiscard]] std::optional<double> parse_double(std::string_view text);

}  // namespace glc3d
