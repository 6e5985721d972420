#pragma once

#include <json.hpp>

#include <cmath>
#include <cstdint>

namespace qea {

// Integral values are stored as JSON integers so that "2025" survives a
// load/save cycle unchanged instead of becoming "2025.0".
inline nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v) && std::trunc(v) == v && std::fabs(v) < 9.0e15)
        return static_cast<std::int64_t>(v);
    return v;
}

// Non-finite values become null (curve gaps, absent years).
inline nlohmann::ordered_json json_finite_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return json_number(v);
}

}  // namespace qea
