#pragma once

namespace qbarrier {

/// Speed of light in vacuum (m/s, exact).
inline constexpr double speed_of_light = 299792458.0;

}  // namespace qbarrier
