#pragma once

// Shot-event interchange, cleaning and synthetic generation.
//
// Canonical shot CSV (UTF-8, comma separated, no quoting):
//   player,date,x0_ft,z0_ft,v0_mph,theta_deg,depth_dev_in,lateral_dev_in,made,outcome
// with ISO dates, made in {0,1} and outcome in {SWISH,RIM,MISS}.

#include <array>
#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ftc/errors.hpp"
#include "ftc/shot.hpp"

namespace ftc {

inline constexpr std::string_view kShotCsvHeader =
    "player,date,x0_ft,z0_ft,v0_mph,theta_deg,depth_dev_in,lateral_dev_in,made,outcome";

std::string_view outcome_label(Outcome o);
std::optional<Outcome> parse_outcome_label(std::string_view s);

std::string format_date(std::chrono::year_month_day d);
std::optional<std::chrono::year_month_day> parse_date(std::string_view s);

enum class ParseMode { Strict, Lenient };

struct ParseResult {
  std::vector<ShotRecord> records;
  std::vector<RowError> errors; ///< skipped rows (lenient mode only)
};

/// Throws SchemaError on a bad header; in strict mode also throws the first RowError.
ParseResult parse_shots(std::istream& in, ParseMode mode = ParseMode::Strict);
void write_shots(std::ostream& out, std::span<const ShotRecord> records);

enum class ShotField : std::size_t { X0, Z0, V0, Theta, Depth, Lateral };
inline constexpr std::size_t kShotFieldCount = 6;
inline constexpr std::array<std::string_view, kShotFieldCount> kShotFieldNames = {
    "x0", "z0", "v0", "theta", "depth_dev", "lateral_dev"};

struct FilterReport {
  std::size_t input = 0;
  std::size_t removed = 0;
  /// Records beyond the cut in each field; a record may count in several.
  std::array<std::size_t, kShotFieldCount> per_field{};
};

struct FilterResult {
  std::vector<ShotRecord> kept;
  FilterReport report;
};

/// Single pass: drops every record with any field more than `n_sigma`
/// population SDs from the full-input mean. Throws EmptyInput below two records.
FilterResult filter_outliers(std::span<const ShotRecord> records, double n_sigma = 4.0);

std::set<std::string> eligible_players(std::span<const ShotRecord> records, std::size_t min_attempts = 200);

struct PlayerArchetype {
  std::string name;
  double v_mean_mph = 0.0;
  double v_sd_mph = 0.0;
  double theta_mean_deg = 0.0;
  double theta_sd_deg = 0.0;
  double z0_mean_ft = 0.0;
  double z0_sd_ft = 0.0;
  double x0_ft = 18.5;
  double lateral_sd_in = 1.5;
  double rim_make_prob = 0.5;

  /// Throws InvalidArchetype.
  void validate() const;
};

/// Ten named shooters plus the league average, from published launch means and SDs.
std::vector<PlayerArchetype> builtin_archetypes();

/// Reads a JSON array of archetype objects; keys match the field names.
std::vector<PlayerArchetype> load_archetypes(std::istream& in);

struct DateRange {
  std::chrono::year_month_day first{std::chrono::year{2024}, std::chrono::month{10}, std::chrono::day{22}};
  std::chrono::year_month_day last{std::chrono::year{2025}, std::chrono::month{4}, std::chrono::day{13}};
};

/// Seeded generator. Each archetype draws from its own stream,
/// derive_seed(seed, archetype index), in the fixed order speed, angle, height,
/// lateral, rim-make, date, so output is independent of `threads`. Records are
/// grouped by archetype and sorted by date within each.
std::vector<ShotRecord> synthesize_shots(std::span<const PlayerArchetype> archetypes, std::size_t shots_per_player,
                                         std::uint64_t seed, const CourtGeometry<double>& geom,
                                         const DateRange& dates = {}, unsigned threads = 1);

} // namespace ftc
