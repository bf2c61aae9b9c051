#pragma once

namespace isac {

// Propagation speed used throughout (link budget, Doppler, radar ranging).
inline constexpr double kSpeedOfLight = 3.0e8;  // m/s

inline constexpr double kEarthRadius = 6.371e6;  // m

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

}  // namespace isac
