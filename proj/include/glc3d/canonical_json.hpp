#pragma once

#include <json.hpp>

#include <string>

namespace glc3d {

/// Compact JSON with keys in sorted order and every floating-point number
/// written with 17 significant digits. Identical values give identical bytes.
[[nodiscard]] std::string canonical_dump(const nlohmann::json& value);

}  // namespace glc3d
