#include "glc3d/number_format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace glc3d {

std::string format_double(double value) {
    char buffer[40];
    const int len = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    std::string out(buffer, static_cast<std::size_t>(len));
    if (std::isfinite(value) && out.find_first_of(".e") == std::string::npos) {
        out += ".0";
    }
    return out;
}

std::optional<double> parse_double(std::string_view text) {
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (begin == end || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

}  // namespace glc3d
