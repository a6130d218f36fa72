#include "glc3d/canonical_json.hpp"

#include "glc3d/error.hpp"
#include "glc3d/number_format.hpp"

#include <cmath>

namespace glc3d {

namespace {

void write(const nlohmann::json& value, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (value.type()) {
        case value_t::object: {
            // nlohmann::json objects are std::map backed, so iteration is key-sorted.
            out += '{';
            bool first = true;
            for (const auto& [key, item] : value.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                out += nlohmann::json(key).dump();
                out += ':';
                write(item, out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < value.size(); ++i) {
                if (i != 0) {
                    out += ',';
                }
                write(value[i], out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            const double v = value.get<double>();
            if (!std::isfinite(v)) {
                throw ValidationError("cannot serialize a non-finite number");
            }
            out += format_double(v);
            break;
        }
        default:
            out += value.dump();
            break;
    }
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
    std::string out;
    write(value, out);
    return out;
}

}  // namespace glc3d
