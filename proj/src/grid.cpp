#include "ftc/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

namespace ftc {

namespace {

double parse_number(std::string_view text) {
  double out = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end || text.empty())
    throw InvalidAxisSpec("bad number in axis spec: '" + std::string(text) + "'");
  return out;
}

// Runs fn(row) for every row, splitting contiguous row blocks across threads.
// Rows are independent, so results do not depend on the thread count.
void for_each_row(std::size_t rows, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(rows, 1));
  if (workers == 1) {
    for (std::size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = rows * w / workers;
    const std::size_t end = rows * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t r = begin; r < end; ++r) fn(r);
    });
  }
  for (auto& t : pool) t.join();
}

} // namespace

void AxisSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step))
    throw InvalidAxisSpec("axis bounds must be finite");
  if (!(step > 0)) throw InvalidAxisSpec("axis step must be positive");
  if (min > max) throw InvalidAxisSpec("axis min exceeds max");
}

std::size_t AxisSpec::size() const {
  return static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
}

AxisSpec AxisSpec::parse(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos)
    throw InvalidAxisSpec("axis spec must look like MIN:MAX:STEP, got '" + std::string(text) + "'");
  AxisSpec spec{parse_number(text.substr(0, first)), parse_number(text.substr(first + 1, second - first - 1)),
                parse_number(text.substr(second + 1))};
  spec.validate();
  return spec;
}

OutcomeGrid outcome_grid(const AxisSpec& v_mph, const AxisSpec& theta_deg, double x0, double z0,
                         const CourtGeometry<double>& geom, unsigned threads) {
  v_mph.validate();
  theta_deg.validate();
  OutcomeGrid grid{v_mph, theta_deg, x0, z0, {}};
  const auto rows = theta_deg.size();
  const auto cols = v_mph.size();
  grid.cells.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for_each_row(rows, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto launch = LaunchConditions<double>::from_imperial(x0, z0, v_mph.value(j), theta_deg.value(i));
      grid.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<int>(classify_outcome(launch, geom));
    }
  });
  return grid;
}

ErrorGrid error_grid(const AxisSpec& v_mph, const AxisSpec& theta_deg, double x0, double z0,
                     double dv_mph, double dtheta_deg, const CourtGeometry<double>& geom,
                     unsigned threads) {
  v_mph.validate();
  theta_deg.validate();
  if (dv_mph < 0 || dtheta_deg < 0) throw InvalidArgument("perturbations must be non-negative");

  ErrorGrid grid;
  grid.v_mph = v_mph;
  grid.theta_deg = theta_deg;
  grid.x0 = x0;
  grid.z0 = z0;
  grid.dv_mph = dv_mph;
  grid.dtheta_deg = dtheta_deg;

  const auto rows = static_cast<Eigen::Index>(theta_deg.size());
  const auto cols = static_cast<Eigen::Index>(v_mph.size());
  grid.values.setZero(rows, cols);
  grid.sentinel.setConstant(rows, cols, false);

  // Contour membership per cell: bit 0 bullseye, bit 1 front rim, bit 2 back rim.
  GridArray<int> contour = GridArray<int>::Zero(rows, cols);

  const auto delta = Perturbation<double>::from_imperial(dv_mph, dtheta_deg);
  const double half_step = units::mph_to_fps(v_mph.step) / 2;
  const double targets[3] = {geom.bullseye_x(), geom.front_rim_x(), geom.back_rim_x()};

  for_each_row(static_cast<std::size_t>(rows), threads, [&](std::size_t i) {
    const auto r = static_cast<Eigen::Index>(i);
    for (Eigen::Index c = 0; c < cols; ++c) {
      const auto launch = LaunchConditions<double>::from_imperial(
          x0, z0, v_mph.value(static_cast<std::size_t>(c)), theta_deg.value(i));
      const auto centre = try_landing_x(launch, geom);
      if (!centre) {
        grid.values(r, c) = std::numeric_limits<double>::infinity();
        continue;
      }
      grid.values(r, c) = error_propagation(launch, delta, geom);

      // The landing span of a cell is the x_f range swept across its speed width.
      auto lo = launch;
      auto hi = launch;
      lo.v0 -= half_step;
      hi.v0 += half_step;
      const auto a = try_landing_x(lo, geom);
      const auto b = try_landing_x(hi, geom);
      if (!a || !b) continue;
      const double half_span = std::abs(a->x_f - b->x_f) / 2;
      for (int k = 0; k < 3; ++k)
        if (std::abs(centre->x_f - targets[k]) < half_span) contour(r, c) |= 1 << k;
    }
  });

  double finite_max = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      if (std::isfinite(grid.values(r, c))) finite_max = std::max(finite_max, grid.values(r, c));

  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!std::isfinite(grid.values(r, c))) {
        grid.values(r, c) = finite_max;
        grid.sentinel(r, c) = true;
      }
      const GridCell cell{static_cast<std::size_t>(r), static_cast<std::size_t>(c)};
      if (contour(r, c) & 1) grid.bullseye_contour.push_back(cell);
      if (contour(r, c) & 2) grid.front_rim_contour.push_back(cell);
      if (contour(r, c) & 4) grid.back_rim_contour.push_back(cell);
    }
  }
  return grid;
}

} // namespace ftc
