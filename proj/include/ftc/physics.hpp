#pragma once

// Closed-form, drag-free 2D flight of a free throw. The x axis runs from the
// baseline toward the shooter, so the ball travels toward decreasing x. All
// quantities are in feet, seconds and radians; MPH and degrees only appear in
// the `from_imperial` helpers.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "ftc/errors.hpp"
#include "ftc/units.hpp"

namespace ftc {

/// Integer codes are the grid export codes.
enum class Outcome : int { Swish = 0, RimContact = 1, Miss = 2 };

template <typename Scalar = double>
struct LaunchConditions {
  Scalar x0{};     ///< release distance from the baseline
  Scalar z0{};     ///< release height above the floor
  Scalar v0{};     ///< launch speed
  Scalar theta0{}; ///< launch angle above horizontal

  static LaunchConditions from_imperial(Scalar x0_ft, Scalar z0_ft, Scalar v0_mph, Scalar theta_deg) {
    return {x0_ft, z0_ft, units::mph_to_fps(v0_mph), units::deg_to_rad(theta_deg)};
  }

  Scalar v0_mph() const { return units::fps_to_mph(v0); }
  Scalar theta_deg() const { return units::rad_to_deg(theta0); }

  friend bool operator==(const LaunchConditions&, const LaunchConditions&) = default;
};

template <typename Scalar = double>
struct CourtGeometry {
  Scalar rim_height = Scalar(10);
  Scalar rim_center_x = Scalar(5.25);
  Scalar rim_radius = Scalar(0.75);
  Scalar ball_radius = Scalar(29.5) / (Scalar(24) * std::numbers::pi_v<Scalar>);
  Scalar g = Scalar(32.174);

  /// The bullseye sits two inches behind the rim center, toward the baseline.
  static constexpr Scalar kBullseyeOffset = Scalar(2) / Scalar(12);

  Scalar bullseye_x() const { return rim_center_x - kBullseyeOffset; }
  Scalar front_rim_x() const { return rim_center_x + rim_radius; }
  Scalar back_rim_x() const { return rim_center_x - rim_radius; }

  void validate() const {
    if (!(rim_height > 0 && rim_center_x > 0 && rim_radius > 0 && ball_radius > 0 && g > 0))
      throw InvalidArgument("court geometry lengths and gravity must be positive");
    if (!(ball_radius < rim_radius))
      throw InvalidArgument("ball radius must be smaller than rim radius");
    if (!(rim_center_x - kBullseyeOffset > 0))
      throw InvalidArgument("bullseye must lie in front of the baseline");
  }
};

/// State of the ball as it passes rim height on the way down.
template <typename Scalar = double>
struct RimCrossing {
  Scalar x_f{};   ///< horizontal position at rim height
  Scalar dt{};    ///< flight time from release
  Scalar gamma{}; ///< descent angle below horizontal
  Scalar vx_f{};  ///< horizontal speed toward the baseline (always v0 cos theta0)
  Scalar vz_f{};  ///< vertical velocity, negative
};

/// Perturbation magnitudes for error propagation, in internal units.
template <typename Scalar = double>
struct Perturbation {
  Scalar dv{};
  Scalar dtheta{};

  static Perturbation from_imperial(Scalar dv_mph, Scalar dtheta_deg) {
    return {units::mph_to_fps(dv_mph), units::deg_to_rad(dtheta_deg)};
  }
};

template <typename Scalar = double>
struct TrajectorySample {
  Scalar t{};
  Scalar x{};
  Scalar z{};
};

/// v0^2 sin^2(theta0) - 2 g (z_f - z0). Negative when the apex is below the rim.
template <typename Scalar>
Scalar rim_discriminant(const LaunchConditions<Scalar>& launch, const CourtGeometry<Scalar>& geom) {
  using std::sin;
  const Scalar vz = launch.v0 * sin(launch.theta0);
  return vz * vz - Scalar(2) * geom.g * (geom.rim_height - launch.z0);
}

/// Later (descending) root of z0 + vz t - g t^2 / 2 = z_f, or nullopt.
template <typename Scalar>
std::optional<Scalar> try_flight_time(const LaunchConditions<Scalar>& launch,
                                      const CourtGeometry<Scalar>& geom) {
  using std::sin;
  using std::sqrt;
  const Scalar disc = rim_discriminant(launch, geom);
  if (!(disc >= 0)) return std::nullopt;
  return (launch.v0 * sin(launch.theta0) + sqrt(disc)) / geom.g;
}

template <typename Scalar>
Scalar flight_time(const LaunchConditions<Scalar>& launch, const CourtGeometry<Scalar>& geom) {
  if (auto dt = try_flight_time(launch, geom)) return *dt;
  throw NeverReachesRim();
}

template <typename Scalar>
std::optional<RimCrossing<Scalar>> try_landing_x(const LaunchConditions<Scalar>& launch,
                                                 const CourtGeometry<Scalar>& geom) {
  using std::atan2;
  using std::cos;
  using std::sin;
  const auto dt = try_flight_time(launch, geom);
  if (!dt) return std::nullopt;
  RimCrossing<Scalar> c;
  c.dt = *dt;
  c.vx_f = launch.v0 * cos(launch.theta0);
  c.vz_f = launch.v0 * sin(launch.theta0) - geom.g * c.dt;
  c.x_f = launch.x0 - c.vx_f * c.dt;
  c.gamma = atan2(-c.vz_f, c.vx_f);
  return c;
}

template <typename Scalar>
RimCrossing<Scalar> landing_x(const LaunchConditions<Scalar>& launch, const CourtGeometry<Scalar>& geom) {
  if (auto c = try_landing_x(launch, geom)) return *c;
  throw NeverReachesRim();
}

/// Classifies a crossing by treating the path near the rim as a straight line
/// at the descent angle. The front rim must be cleared by a full ball radius
/// (perpendicular distance); the back rim only requires the ball center to
/// cross the rim plane in front of it.
template <typename Scalar>
Outcome classify_crossing(const RimCrossing<Scalar>& c, const CourtGeometry<Scalar>& geom) {
  using std::abs;
  using std::sin;
  const Scalar s = sin(c.gamma);
  const Scalar d_front = (geom.front_rim_x() - c.x_f) * s;
  const Scalar d_back = (c.x_f - geom.back_rim_x()) * s;
  if (d_front >= geom.ball_radius && c.x_f >= geom.back_rim_x()) return Outcome::Swish;
  if (abs(d_front) < geom.ball_radius || abs(d_back) < geom.ball_radius) return Outcome::RimContact;
  return Outcome::Miss;
}

template <typename Scalar>
Outcome classify_outcome(const LaunchConditions<Scalar>& launch, const CourtGeometry<Scalar>& geom) {
  const auto c = try_landing_x(launch, geom);
  return c ? classify_crossing(*c, geom) : Outcome::Miss;
}

/// Worst-case landing shift over the four sign corners (v0 +/- dv, theta0 +/- dtheta).
/// A corner that never reaches the rim makes the result +infinity.
template <typename Scalar>
Scalar error_propagation(const LaunchConditions<Scalar>& launch, const Perturbation<Scalar>& delta,
                         const CourtGeometry<Scalar>& geom) {
  using std::abs;
  if (delta.dv < 0 || delta.dtheta < 0) throw InvalidArgument("perturbations must be non-negative");
  const Scalar base = landing_x(launch, geom).x_f;
  Scalar worst = Scalar(0);
  for (const Scalar sv : {Scalar(-1), Scalar(1)}) {
    for (const Scalar st : {Scalar(-1), Scalar(1)}) {
      LaunchConditions<Scalar> corner = launch;
      corner.v0 += sv * delta.dv;
      corner.theta0 += st * delta.dtheta;
      const auto c = try_landing_x(corner, geom);
      if (!c) return std::numeric_limits<Scalar>::infinity();
      const Scalar shift = abs(c->x_f - base);
      if (shift > worst) worst = shift;
    }
  }
  return worst;
}

/// Samples the closed-form path every `dt_step` seconds from release until the
/// ball drops below the floor or passes the baseline. The terminating sample
/// is included.
template <typename Scalar>
std::vector<TrajectorySample<Scalar>> simulate_trajectory(const LaunchConditions<Scalar>& launch,
                                                          const CourtGeometry<Scalar>& geom,
                                                          Scalar dt_step) {
  using std::cos;
  using std::sin;
  if (!(dt_step > 0)) throw InvalidStep("trajectory time step must be positive");
  const Scalar vx = launch.v0 * cos(launch.theta0);
  const Scalar vz = launch.v0 * sin(launch.theta0);
  std::vector<TrajectorySample<Scalar>> out;
  for (long long k = 0;; ++k) {
    const Scalar t = Scalar(k) * dt_step;
    TrajectorySample<Scalar> s{t, launch.x0 - vx * t, launch.z0 + vz * t - Scalar(0.5) * geom.g * t * t};
    out.push_back(s);
    if (s.z < 0 || s.x < 0) break;
  }
  return out;
}

/// Linear interpolation of the last downward crossing of `height` in a sampled
/// path, or nullopt if the samples never cross it going down.
template <typename Scalar>
std::optional<Scalar> interpolate_descending_crossing(const std::vector<TrajectorySample<Scalar>>& path,
                                                      Scalar height) {
  for (std::size_t i = path.size(); i-- > 1;) {
    const auto& a = path[i - 1];
    const auto& b = path[i];
    if (a.z >= height && b.z < height) {
      const Scalar w = (a.z - height) / (a.z - b.z);
      return a.x + w * (b.x - a.x);
    }
  }
  return std::nullopt;
}

} // namespace ftc
