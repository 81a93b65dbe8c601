#pragma once

#include <chrono>
#include <string>

#include "ftc/physics.hpp"

namespace ftc {

/// In-rim landing offset from the bullseye, in inches. Positive depth means the
/// ball landed short (toward the shooter).
struct LandingPoint {
  double depth_dev = 0.0;
  double lateral_dev = 0.0;

  friend bool operator==(const LandingPoint&, const LandingPoint&) = default;
};

struct ShotRecord {
  std::string player;
  std::chrono::year_month_day date{};
  LaunchConditions<double> launch;
  LandingPoint landing;
  bool made = false;
  Outcome outcome = Outcome::Miss;
};

} // namespace ftc
