#pragma once

#include <cmath>
#include <cstdint>

namespace rdg {

namespace detail {
// Absolute snap applied before floor/ceil so that products like 0.3 * 10,
// which land a few ulp below an integer, round to the intended value.
inline constexpr double kIntegerSnap = 1e-9;
} // namespace detail

/// floor(x) robust against values sitting a hair below an integer.
inline std::int64_t floor_count(double x) {
    return static_cast<std::int64_t>(std::floor(x + detail::kIntegerSnap));
}

/// ceil(x) robust against values sitting a hair above an integer.
inline std::int64_t ceil_count(double x) {
    return static_cast<std::int64_t>(std::ceil(x - detail::kIntegerSnap));
}

} // namespace rdg
