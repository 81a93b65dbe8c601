#pragma once

// Dense (v0, theta0) rasters over a fixed release point. Rows run over the
// angle axis and columns over the speed axis, so row-major storage gives the
// theta-outer / v-inner export order.

#include <cstddef>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ftc/physics.hpp"

namespace ftc {

/// Inclusive, evenly stepped axis in I/O units (MPH or degrees).
struct AxisSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  /// Throws InvalidAxisSpec.
  void validate() const;
  std::size_t size() const;
  double value(std::size_t i) const { return min + static_cast<double>(i) * step; }

  /// Parses `MIN:MAX:STEP`.
  static AxisSpec parse(std::string_view text);
};

struct GridCell {
  std::size_t theta_index = 0;
  std::size_t v_index = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
};

template <typename T>
using GridArray = Eigen::Array<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct OutcomeGrid {
  AxisSpec v_mph;
  AxisSpec theta_deg;
  double x0 = 0.0;
  double z0 = 0.0;
  GridArray<int> cells; ///< Outcome codes, theta rows by v columns

  Outcome at(std::size_t theta_index, std::size_t v_index) const {
    return static_cast<Outcome>(cells(static_cast<Eigen::Index>(theta_index), static_cast<Eigen::Index>(v_index)));
  }
};

struct ErrorGrid {
  AxisSpec v_mph;
  AxisSpec theta_deg;
  double x0 = 0.0;
  double z0 = 0.0;
  double dv_mph = 0.0;
  double dtheta_deg = 0.0;
  GridArray<double> values;  ///< landing shift in feet
  GridArray<bool> sentinel;  ///< cell had a corner that never reaches the rim
  std::vector<GridCell> bullseye_contour;
  std::vector<GridCell> front_rim_contour;
  std::vector<GridCell> back_rim_contour;
};

OutcomeGrid outcome_grid(const AxisSpec& v_mph, const AxisSpec& theta_deg, double x0, double z0,
                         const CourtGeometry<double>& geom, unsigned threads = 1);

/// Cells whose perturbed (or unperturbed) launch never reaches the rim take the
/// grid's largest finite value and are flagged in `sentinel`.
ErrorGrid error_grid(const AxisSpec& v_mph, const AxisSpec& theta_deg, double x0, double z0,
                     double dv_mph, double dtheta_deg, const CourtGeometry<double>& geom,
                     unsigned threads = 1);

} // namespace ftc
