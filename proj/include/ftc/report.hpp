#pragma once

// Plot-ready exports. Grid and metrics floats use six decimals so reruns are
// byte-identical.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ftc/grid.hpp"
#include "ftc/metrics.hpp"
#include "ftc/optimizer.hpp"

namespace ftc {

std::string format_fixed(double value, int decimals = 6);

/// `v_mph,theta_deg,value`, theta outer. Values are outcome codes.
void write_grid_csv(std::ostream& out, const OutcomeGrid& grid);
/// `v_mph,theta_deg,value`, theta outer. Values are landing shifts in feet.
void write_grid_csv(std::ostream& out, const ErrorGrid& grid);

nlohmann::json grid_metadata(const OutcomeGrid& grid, const CourtGeometry<double>& geom);
nlohmann::json grid_metadata(const ErrorGrid& grid, const CourtGeometry<double>& geom);

/// `iter,v_mph,theta_deg,xf_ft,loss`
void write_trace_csv(std::ostream& out, const DescentTrace<double>& trace);

/// `t_s,x_ft,z_ft`
void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample<double>> path);

inline constexpr const char* kMetricsCsvHeader =
    "player,n,mu_in,sigma_in,command,z_v,z_theta,z_pos,r_v,r_theta,r_pos,touch,ft_pct,"
    "r_v_pct,r_theta_pct,r_pos_pct,touch_pct,command_pct,ft_pct_pct";

void write_metrics_csv(std::ostream& out, std::span<const PlayerMetrics> rows);

/// Applies JSON overrides (rim_height, rim_center_x, rim_radius, ball_radius, g)
/// to the default court. Unknown keys are rejected.
CourtGeometry<double> load_geometry(std::istream& in);

nlohmann::json to_json(const SplitHalfReport& report);

} // namespace ftc
