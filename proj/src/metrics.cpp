#include "ftc/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>

#include "ftc/errors.hpp"

namespace ftc {

namespace {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanSd population_stats(std::span<const double> xs) {
  const Eigen::Map<const Eigen::ArrayXd> a(xs.data(), static_cast<Eigen::Index>(xs.size()));
  const double mean = a.mean();
  return {mean, std::sqrt((a - mean).square().mean())};
}

std::vector<double> values_of(const PlayerValues& m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (const auto& [_, v] : m) out.push_back(v);
  return out;
}

bool degenerate_spread(double spread, double scale) { return spread <= 1e-12 * std::max(1.0, std::abs(scale)); }

PlayerValues inverted_minmax_percent(const PlayerValues& z) {
  if (z.empty()) throw EmptyInput("no players to normalize");
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end(),
                                            [](const auto& a, const auto& b) { return a.second < b.second; });
  const double zmin = lo->second;
  const double range = hi->second - zmin;
  PlayerValues out;
  for (const auto& [player, value] : z)
    out[player] = degenerate_spread(range, 1.0) ? 100.0 : 100.0 - 100.0 * (value - zmin) / range;
  return out;
}

} // namespace

double landing_deviation(const LandingPoint& p) { return std::hypot(p.depth_dev, p.lateral_dev); }

PlayerAccuracy accuracy_stats(std::span<const LandingPoint> shots) {
  if (shots.empty()) throw EmptyInput("accuracy needs at least one shot");
  std::vector<double> d;
  d.reserve(shots.size());
  for (const auto& p : shots) d.push_back(landing_deviation(p));
  const auto s = population_stats(d);
  return {s.mean, s.sd, shots.size()};
}

double command(double mu, double sigma) { return 1.0 / (1.0 + std::hypot(mu, sigma)); }

PlayerValues inconsistency_zscores(const PlayerValues& per_player_sd) {
  if (per_player_sd.empty()) throw EmptyInput("no players for z-scores");
  const auto stats = population_stats(values_of(per_player_sd));
  PlayerValues z;
  const bool degenerate = degenerate_spread(stats.sd, stats.mean);
  for (const auto& [player, sd] : per_player_sd) z[player] = degenerate ? 0.0 : (sd - stats.mean) / stats.sd;
  return z;
}

PlayerValues consistency(const PlayerValues& z) { return inverted_minmax_percent(z); }

PlayerValues touch(const PlayerValues& z_theta, const PlayerValues& z_v) {
  if (z_theta.size() != z_v.size()) throw MismatchedPlayers();
  PlayerValues sum;
  for (const auto& [player, zt] : z_theta) {
    const auto it = z_v.find(player);
    if (it == z_v.end()) throw MismatchedPlayers();
    sum[player] = zt + it->second;
  }
  return inverted_minmax_percent(sum);
}

PlayerPercentiles percentile_rank(const PlayerValues& values) {
  std::vector<std::pair<double, std::string>> sorted;
  sorted.reserve(values.size());
  for (const auto& [player, v] : values) sorted.emplace_back(v, player);
  std::sort(sorted.begin(), sorted.end());

  const double n = static_cast<double>(sorted.size());
  PlayerPercentiles out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].first == sorted[i].first) ++j;
    // Ranks i+1 .. j share their average.
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    const int pct = std::clamp(static_cast<int>(std::floor(100.0 * rank / n + 0.5)), 1, 100);
    for (std::size_t k = i; k < j; ++k) out[sorted[k].second] = pct;
    i = j;
  }
  return out;
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw LengthMismatch();
  if (x.size() < 2) throw InvalidArgument("correlation needs at least two points");
  const Eigen::Map<const Eigen::ArrayXd> a(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::Map<const Eigen::ArrayXd> b(y.data(), static_cast<Eigen::Index>(y.size()));
  const Eigen::ArrayXd da = a - a.mean();
  const Eigen::ArrayXd db = b - b.mean();
  const double saa = da.square().sum();
  const double sbb = db.square().sum();
  if (degenerate_spread(std::sqrt(saa / a.size()), a.abs().maxCoeff()) ||
      degenerate_spread(std::sqrt(sbb / b.size()), b.abs().maxCoeff()))
    throw ZeroVariance();
  return std::clamp((da * db).sum() / std::sqrt(saa * sbb), -1.0, 1.0);
}

LaunchSpread launch_spread(std::span<const ShotRecord> shots) {
  if (shots.empty()) throw EmptyInput("launch spread needs at least one shot");
  std::vector<double> v, th, x, z;
  for (const auto& s : shots) {
    v.push_back(s.launch.v0_mph());
    th.push_back(s.launch.theta_deg());
    x.push_back(s.launch.x0);
    z.push_back(s.launch.z0);
  }
  const double sx = population_stats(x).sd;
  const double sz = population_stats(z).sd;
  return {population_stats(v).sd, population_stats(th).sd, std::sqrt(sx * sx + sz * sz)};
}

namespace {

std::map<std::string, std::vector<ShotRecord>> group_by_player(std::span<const ShotRecord> records,
                                                               const std::set<std::string>& keep) {
  std::map<std::string, std::vector<ShotRecord>> out;
  for (const auto& r : records)
    if (keep.contains(r.player)) out[r.player].push_back(r);
  return out;
}

std::vector<LandingPoint> landings(std::span<const ShotRecord> shots) {
  std::vector<LandingPoint> out;
  out.reserve(shots.size());
  for (const auto& s : shots) out.push_back(s.landing);
  return out;
}

double make_rate(std::span<const ShotRecord> shots) {
  const auto made = std::count_if(shots.begin(), shots.end(), [](const ShotRecord& s) { return s.made; });
  return static_cast<double>(made) / static_cast<double>(shots.size());
}

} // namespace

std::vector<PlayerMetrics> league_metrics(std::span<const ShotRecord> records, const std::set<std::string>& eligible) {
  const auto groups = group_by_player(records, eligible);
  if (groups.empty()) return {};

  std::vector<PlayerMetrics> out;
  PlayerValues sd_v, sd_theta, sd_pos, commands, ftp;
  for (const auto& [player, shots] : groups) {
    PlayerMetrics m;
    m.player = player;
    m.accuracy = accuracy_stats(landings(shots));
    m.command = command(m.accuracy);
    m.ft_pct = make_rate(shots);
    const auto spread = launch_spread(shots);
    sd_v[player] = spread.velocity;
    sd_theta[player] = spread.angle;
    sd_pos[player] = spread.position;
    commands[player] = m.command;
    ftp[player] = m.ft_pct;
    out.push_back(std::move(m));
  }

  const auto z_v = inconsistency_zscores(sd_v);
  const auto z_theta = inconsistency_zscores(sd_theta);
  const auto z_pos = inconsistency_zscores(sd_pos);
  const auto r_v = consistency(z_v);
  const auto r_theta = consistency(z_theta);
  const auto r_pos = consistency(z_pos);
  const auto touch_r = touch(z_theta, z_v);

  const auto p_rv = percentile_rank(r_v);
  const auto p_rt = percentile_rank(r_theta);
  const auto p_rp = percentile_rank(r_pos);
  const auto p_touch = percentile_rank(touch_r);
  const auto p_cmd = percentile_rank(commands);
  const auto p_ft = percentile_rank(ftp);

  for (auto& m : out) {
    const auto& p = m.player;
    m.z_velocity = z_v.at(p);
    m.z_angle = z_theta.at(p);
    m.z_position = z_pos.at(p);
    m.r_velocity = r_v.at(p);
    m.r_angle = r_theta.at(p);
    m.r_position = r_pos.at(p);
    m.touch = touch_r.at(p);
    m.r_velocity_pct = p_rv.at(p);
    m.r_angle_pct = p_rt.at(p);
    m.r_position_pct = p_rp.at(p);
    m.touch_pct = p_touch.at(p);
    m.command_pct = p_cmd.at(p);
    m.ft_pct_pct = p_ft.at(p);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PlayerMetrics& a, const PlayerMetrics& b) { return a.command < b.command; });
  return out;
}

SplitHalfReport split_half_validity(std::span<const ShotRecord> records, std::chrono::year_month_day split,
                                    std::size_t min_attempts) {
  const std::size_t need = std::max<std::size_t>(min_attempts, 1);
  std::map<std::string, std::pair<std::vector<ShotRecord>, std::vector<ShotRecord>>> halves;
  for (const auto& r : records) {
    auto& h = halves[r.player];
    (std::chrono::sys_days(r.date) < std::chrono::sys_days(split) ? h.first : h.second).push_back(r);
  }

  std::vector<double> early_ft, late_ft, early_cmd, late_cmd;
  for (const auto& [player, h] : halves) {
    if (h.first.size() < need || h.second.size() < need) continue;
    early_ft.push_back(make_rate(h.first));
    late_ft.push_back(make_rate(h.second));
    early_cmd.push_back(command(accuracy_stats(landings(h.first))));
    late_cmd.push_back(command(accuracy_stats(landings(h.second))));
  }
  if (early_ft.size() < 2)
    throw InsufficientPlayers("split-half validity needs at least two players with " + std::to_string(need) +
                              " attempts on each side of the split");

  return {pearson_r(early_ft, late_ft), pearson_r(early_cmd, late_cmd), pearson_r(early_cmd, late_ft),
          early_ft.size()};
}

} // namespace ftc
