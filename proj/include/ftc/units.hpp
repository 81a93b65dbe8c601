#pragma once

#include <numbers>

namespace ftc::units {

// 1 MPH = 5280 ft / 3600 s, exactly.
template <typename Scalar = double>
inline constexpr Scalar kFeetPerSecondPerMph = Scalar(5280) / Scalar(3600);

template <typename Scalar>
constexpr Scalar mph_to_fps(Scalar mph) { return mph * Scalar(5280) / Scalar(3600); }

template <typename Scalar>
constexpr Scalar fps_to_mph(Scalar fps) { return fps * Scalar(3600) / Scalar(5280); }

template <typename Scalar>
constexpr Scalar deg_to_rad(Scalar deg) { return deg * std::numbers::pi_v<Scalar> / Scalar(180); }

template <typename Scalar>
constexpr Scalar rad_to_deg(Scalar rad) { return rad * Scalar(180) / std::numbers::pi_v<Scalar>; }

template <typename Scalar>
constexpr Scalar feet_to_inches(Scalar ft) { return ft * Scalar(12); }

template <typename Scalar>
constexpr Scalar inches_to_feet(Scalar in) { return in / Scalar(12); }

} // namespace ftc::units
