#pragma once

// Per-player shot-quality statistics. Landing distances are in inches and all
// standard deviations are population SDs.

#include <chrono>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "ftc/shot.hpp"

namespace ftc {

using PlayerValues = std::map<std::string, double>;
using PlayerPercentiles = std::map<std::string, int>;

struct PlayerAccuracy {
  double mu = 0.0;    ///< mean landing distance from the bullseye
  double sigma = 0.0; ///< SD of landing distances
  std::size_t n = 0;
};

struct PlayerMetrics {
  std::string player;
  PlayerAccuracy accuracy;
  double command = 0.0;
  double z_velocity = 0.0;
  double z_angle = 0.0;
  double z_position = 0.0;
  double r_velocity = 0.0; ///< percent
  double r_angle = 0.0;
  double r_position = 0.0;
  double touch = 0.0;
  double ft_pct = 0.0; ///< fraction in [0, 1]
  int r_velocity_pct = 0;
  int r_angle_pct = 0;
  int r_position_pct = 0;
  int touch_pct = 0;
  int command_pct = 0;
  int ft_pct_pct = 0;
};

/// Launch inconsistency of one player: SDs of speed (MPH), angle (degrees) and
/// release position (feet, root of summed x0/z0 variances).
struct LaunchSpread {
  double velocity = 0.0;
  double angle = 0.0;
  double position = 0.0;
};

struct SplitHalfReport {
  double r_ftpct = 0.0;         ///< early FT% vs late FT%
  double r_command = 0.0;       ///< early command vs late command
  double r_command_ftpct = 0.0; ///< early command vs late FT%
  std::size_t n_players = 0;
};

double landing_deviation(const LandingPoint& p);

/// Throws EmptyInput.
PlayerAccuracy accuracy_stats(std::span<const LandingPoint> shots);

double command(double mu, double sigma);
inline double command(const PlayerAccuracy& acc) { return command(acc.mu, acc.sigma); }

/// League z-scores of per-player SDs. A league whose SDs are all equal maps
/// every player to 0. Throws EmptyInput for an empty map.
PlayerValues inconsistency_zscores(const PlayerValues& per_player_sd);

/// 100 - 100 * minmax(z); all 100 when the z range is degenerate.
PlayerValues consistency(const PlayerValues& z);

/// Consistency of the summed angle and velocity z-scores. Throws MismatchedPlayers.
PlayerValues touch(const PlayerValues& z_theta, const PlayerValues& z_v);

/// Average-rank percentiles, rounded half up and clamped to [1, 100]; the largest value maps to 100.
PlayerPercentiles percentile_rank(const PlayerValues& values);

/// Throws LengthMismatch or ZeroVariance.
double pearson_r(std::span<const double> x, std::span<const double> y);

LaunchSpread launch_spread(std::span<const ShotRecord> shots);

/// Full per-player report over `eligible`, ordered by ascending command.
std::vector<PlayerMetrics> league_metrics(std::span<const ShotRecord> records, const std::set<std::string>& eligible);

/// Early shots are dated strictly before `split`. Throws InsufficientPlayers
/// when fewer than two players have `min_attempts` on both sides.
SplitHalfReport split_half_validity(std::span<const ShotRecord> records, std::chrono::year_month_day split,
                                    std::size_t min_attempts);

} // namespace ftc
