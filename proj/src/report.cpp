#include "ftc/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace ftc {

namespace {

nlohmann::json axis_json(const AxisSpec& a) {
  return {{"min", a.min}, {"max", a.max}, {"step", a.step}, {"count", a.size()}};
}

nlohmann::json geometry_json(const CourtGeometry<double>& g) {
  return {{"rim_height", g.rim_height}, {"rim_center_x", g.rim_center_x}, {"rim_radius", g.rim_radius},
          {"ball_radius", g.ball_radius}, {"g", g.g}, {"bullseye_x", g.bullseye_x()}};
}

nlohmann::json cells_json(const std::vector<GridCell>& cells, const AxisSpec& v, const AxisSpec& theta) {
  auto out = nlohmann::json::array();
  for (const auto& c : cells)
    out.push_back({{"theta_index", c.theta_index}, {"v_index", c.v_index}, {"v_mph", v.value(c.v_index)},
                   {"theta_deg", theta.value(c.theta_index)}});
  return out;
}

template <typename Grid, typename CellFn>
void write_cells(std::ostream& out, const Grid& grid, CellFn&& cell) {
  out << "v_mph,theta_deg,value\n";
  const auto rows = grid.theta_deg.size();
  const auto cols = grid.v_mph.size();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out << format_fixed(grid.v_mph.value(j)) << ',' << format_fixed(grid.theta_deg.value(i)) << ','
          << cell(i, j) << '\n';
}

} // namespace

std::string format_fixed(double value, int decimals) {
  if (value == 0.0) value = 0.0; // fold -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s = buf;
  if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_grid_csv(std::ostream& out, const OutcomeGrid& grid) {
  write_cells(out, grid, [&](std::size_t i, std::size_t j) { return static_cast<int>(grid.at(i, j)); });
}

void write_grid_csv(std::ostream& out, const ErrorGrid& grid) {
  write_cells(out, grid, [&](std::size_t i, std::size_t j) {
    return format_fixed(grid.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  });
}

nlohmann::json grid_metadata(const OutcomeGrid& grid, const CourtGeometry<double>& geom) {
  return {{"kind", "outcome"},
          {"v_mph", axis_json(grid.v_mph)},
          {"theta_deg", axis_json(grid.theta_deg)},
          {"release", {{"x0_ft", grid.x0}, {"z0_ft", grid.z0}}},
          {"codes", {{"SWISH", 0}, {"RIM", 1}, {"MISS", 2}}},
          {"geometry", geometry_json(geom)}};
}

nlohmann::json grid_metadata(const ErrorGrid& grid, const CourtGeometry<double>& geom) {
  std::vector<GridCell> flagged;
  for (Eigen::Index r = 0; r < grid.sentinel.rows(); ++r)
    for (Eigen::Index c = 0; c < grid.sentinel.cols(); ++c)
      if (grid.sentinel(r, c)) flagged.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
  return {{"kind", "error"},
          {"v_mph", axis_json(grid.v_mph)},
          {"theta_deg", axis_json(grid.theta_deg)},
          {"release", {{"x0_ft", grid.x0}, {"z0_ft", grid.z0}}},
          {"perturbation", {{"dv_mph", grid.dv_mph}, {"dtheta_deg", grid.dtheta_deg}}},
          {"units", "ft"},
          {"contours",
           {{"bullseye", cells_json(grid.bullseye_contour, grid.v_mph, grid.theta_deg)},
            {"front_rim", cells_json(grid.front_rim_contour, grid.v_mph, grid.theta_deg)},
            {"back_rim", cells_json(grid.back_rim_contour, grid.v_mph, grid.theta_deg)}}},
          {"sentinel_cells", cells_json(flagged, grid.v_mph, grid.theta_deg)},
          {"geometry", geometry_json(geom)}};
}

void write_trace_csv(std::ostream& out, const DescentTrace<double>& trace) {
  out << "iter,v_mph,theta_deg,xf_ft,loss\n";
  char buf[32];
  for (const auto& s : trace.steps) {
    std::snprintf(buf, sizeof buf, "%.9e", s.loss);
    out << s.iteration << ',' << format_fixed(units::fps_to_mph(s.v0)) << ','
        << format_fixed(units::rad_to_deg(s.theta0)) << ',' << format_fixed(s.x_f) << ',' << buf << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, std::span<const TrajectorySample<double>> path) {
  out << "t_s,x_ft,z_ft\n";
  for (const auto& s : path) out << format_fixed(s.t) << ',' << format_fixed(s.x) << ',' << format_fixed(s.z) << '\n';
}

void write_metrics_csv(std::ostream& out, std::span<const PlayerMetrics> rows) {
  out << kMetricsCsvHeader << '\n';
  for (const auto& m : rows) {
    out << m.player << ',' << m.accuracy.n;
    for (const double v : {m.accuracy.mu, m.accuracy.sigma, m.command, m.z_velocity, m.z_angle, m.z_position,
                           m.r_velocity, m.r_angle, m.r_position, m.touch, m.ft_pct})
      out << ',' << format_fixed(v);
    for (const int p : {m.r_velocity_pct, m.r_angle_pct, m.r_position_pct, m.touch_pct, m.command_pct, m.ft_pct_pct})
      out << ',' << p;
    out << '\n';
  }
}

CourtGeometry<double> load_geometry(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("geometry file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("geometry file must hold a JSON object");
  CourtGeometry<double> g;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw InvalidArgument("geometry field '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "rim_height") g.rim_height = v;
    else if (key == "rim_center_x") g.rim_center_x = v;
    else if (key == "rim_radius") g.rim_radius = v;
    else if (key == "ball_radius") g.ball_radius = v;
    else if (key == "g") g.g = v;
    else throw InvalidArgument("unknown geometry field '" + key + "'");
  }
  g.validate();
  return g;
}

nlohmann::json to_json(const SplitHalfReport& report) {
  return {{"r_ftpct", report.r_ftpct},
          {"r_command", report.r_command},
          {"r_command_to_late_ftpct", report.r_command_ftpct},
          {"n_players", report.n_players}};
}

} // namespace ftc
