#include "ftc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "ftc/random.hpp"

namespace ftc {

namespace {

using namespace std::chrono;

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_double(std::string_view s) {
  double out = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, out);
  if (s.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) return std::nullopt;
  return out;
}

void append_double(std::string& line, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, ptr);
}

ShotRecord parse_row(std::string_view line, std::size_t line_no) {
  const auto f = split_commas(line);
  if (f.size() != 10)
    throw RowError(line_no, "expected 10 fields, found " + std::to_string(f.size()));
  ShotRecord r;
  if (f[0].empty()) throw RowError(line_no, "empty player id");
  r.player = std::string(f[0]);
  const auto date = parse_date(f[1]);
  if (!date) throw RowError(line_no, "bad date '" + std::string(f[1]) + "'");
  r.date = *date;

  static constexpr const char* names[] = {"x0_ft", "z0_ft", "v0_mph", "theta_deg", "depth_dev_in", "lateral_dev_in"};
  double num[6];
  for (int i = 0; i < 6; ++i) {
    const auto v = parse_double(f[static_cast<std::size_t>(i) + 2]);
    if (!v) throw RowError(line_no, std::string("bad ") + names[i] + " '" + std::string(f[static_cast<std::size_t>(i) + 2]) + "'");
    num[i] = *v;
  }
  r.launch = LaunchConditions<double>::from_imperial(num[0], num[1], num[2], num[3]);
  r.landing = {num[4], num[5]};

  if (f[8] == "1") r.made = true;
  else if (f[8] == "0") r.made = false;
  else throw RowError(line_no, "bad made flag '" + std::string(f[8]) + "'");

  const auto outcome = parse_outcome_label(f[9]);
  if (!outcome) throw RowError(line_no, "bad outcome '" + std::string(f[9]) + "'");
  r.outcome = *outcome;
  if (r.outcome == Outcome::Swish && !r.made) throw RowError(line_no, "SWISH recorded as a miss");
  if (r.outcome == Outcome::Miss && r.made) throw RowError(line_no, "MISS recorded as a make");
  return r;
}

double field_value(const ShotRecord& r, std::size_t field) {
  switch (static_cast<ShotField>(field)) {
    case ShotField::X0: return r.launch.x0;
    case ShotField::Z0: return r.launch.z0;
    case ShotField::V0: return r.launch.v0;
    case ShotField::Theta: return r.launch.theta0;
    case ShotField::Depth: return r.landing.depth_dev;
    case ShotField::Lateral: return r.landing.lateral_dev;
  }
  return 0.0;
}

} // namespace

std::string_view outcome_label(Outcome o) {
  switch (o) {
    case Outcome::Swish: return "SWISH";
    case Outcome::RimContact: return "RIM";
    case Outcome::Miss: return "MISS";
  }
  return "MISS";
}

std::optional<Outcome> parse_outcome_label(std::string_view s) {
  if (s == "SWISH") return Outcome::Swish;
  if (s == "RIM") return Outcome::RimContact;
  if (s == "MISS") return Outcome::Miss;
  return std::nullopt;
}

std::string format_date(year_month_day d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

std::optional<year_month_day> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  auto num = [](std::string_view part, auto& out) {
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && ptr == part.data() + part.size();
  };
  if (!num(s.substr(0, 4), y) || !num(s.substr(5, 2), m) || !num(s.substr(8, 2), d)) return std::nullopt;
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

ParseResult parse_shots(std::istream& in, ParseMode mode) {
  ParseResult result;
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("missing header");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kShotCsvHeader) throw SchemaError("unexpected header '" + line + "'");

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      result.records.push_back(parse_row(line, line_no));
    } catch (const RowError& e) {
      if (mode == ParseMode::Strict) throw;
      result.errors.push_back(e);
    }
  }
  return result;
}

void write_shots(std::ostream& out, std::span<const ShotRecord> records) {
  out << kShotCsvHeader << '\n';
  std::string line;
  for (const auto& r : records) {
    if (r.player.find_first_of(",\r\n") != std::string::npos)
      throw InvalidArgument("player id '" + r.player + "' cannot be written to CSV");
    line.clear();
    line += r.player;
    line += ',';
    line += format_date(r.date);
    for (const double v : {r.launch.x0, r.launch.z0, r.launch.v0_mph(), r.launch.theta_deg(), r.landing.depth_dev,
                           r.landing.lateral_dev}) {
      line += ',';
      append_double(line, v);
    }
    line += r.made ? ",1," : ",0,";
    line += outcome_label(r.outcome);
    out << line << '\n';
  }
}

FilterResult filter_outliers(std::span<const ShotRecord> records, double n_sigma) {
  if (records.size() < 2) throw EmptyInput("outlier filtering needs at least two records");
  if (!(n_sigma > 0.0)) throw InvalidArgument("sigma cut must be positive");
  const double n = static_cast<double>(records.size());

  std::array<double, kShotFieldCount> mean{}, sd{};
  for (std::size_t f = 0; f < kShotFieldCount; ++f) {
    double sum = 0.0;
    for (const auto& r : records) sum += field_value(r, f);
    mean[f] = sum / n;
    double ss = 0.0;
    for (const auto& r : records) {
      const double d = field_value(r, f) - mean[f];
      ss += d * d;
    }
    sd[f] = std::sqrt(ss / n);
  }

  FilterResult result;
  result.report.input = records.size();
  for (const auto& r : records) {
    bool keep = true;
    for (std::size_t f = 0; f < kShotFieldCount; ++f) {
      if (std::abs(field_value(r, f) - mean[f]) > n_sigma * sd[f]) {
        ++result.report.per_field[f];
        keep = false;
      }
    }
    if (keep) result.kept.push_back(r);
  }
  result.report.removed = records.size() - result.kept.size();
  return result;
}

std::set<std::string> eligible_players(std::span<const ShotRecord> records, std::size_t min_attempts) {
  std::map<std::string, std::size_t> counts;
  for (const auto& r : records) ++counts[r.player];
  std::set<std::string> out;
  for (const auto& [player, count] : counts)
    if (count >= min_attempts) out.insert(player);
  return out;
}

void PlayerArchetype::validate() const {
  if (name.empty() || name.find_first_of(",\r\n") != std::string::npos)
    throw InvalidArchetype("archetype name must be non-empty and free of commas and newlines");
  for (const double sd : {v_sd_mph, theta_sd_deg, z0_sd_ft, lateral_sd_in})
    if (!(sd >= 0) || !std::isfinite(sd)) throw InvalidArchetype("archetype '" + name + "' has a negative SD");
  if (!(rim_make_prob >= 0 && rim_make_prob <= 1))
    throw InvalidArchetype("archetype '" + name + "' rim make probability outside [0, 1]");
  if (!(v_mean_mph > 0 && theta_mean_deg > 0 && theta_mean_deg < 90 && z0_mean_ft > 0 && x0_ft > 0))
    throw InvalidArchetype("archetype '" + name + "' has an invalid mean launch");
}

std::vector<PlayerArchetype> builtin_archetypes() {
  // Release distance is not published per player; Antetokounmpo and Curry use
  // their measured release points, everyone else 18.5 ft.
  return {
      {"League Average", 14.74, 0.33, 48.66, 2.99, 8.89, 0.42},
      {"Nikola Jokic", 14.76, 0.20, 47.13, 1.46, 9.70, 0.11},
      {"Anthony Davis", 14.47, 0.20, 46.21, 1.46, 9.63, 0.13},
      {"Giannis Antetokounmpo", 14.31, 0.24, 41.04, 1.73, 9.6, 0.11, 18.4},
      {"Bam Adebayo", 14.91, 0.21, 46.26, 1.32, 9.04, 0.15},
      {"Rudy Gobert", 14.29, 0.22, 49.59, 1.44, 8.98, 0.12},
      {"James Harden", 14.52, 0.16, 46.36, 1.47, 8.93, 0.11},
      {"Shai Gilgeous-Alexander", 14.63, 0.20, 49.94, 1.35, 8.84, 0.13},
      {"Russell Westbrook", 14.92, 0.22, 51.65, 1.36, 8.49, 0.16},
      {"Stephen Curry", 15.13, 0.19, 50.97, 1.03, 8.4, 0.13, 18.5},
      {"Damian Lillard", 15.04, 0.18, 50.47, 0.89, 8.19, 0.12},
  };
}

std::vector<PlayerArchetype> load_archetypes(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArchetype(std::string("archetype file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InvalidArchetype("archetype file must hold a JSON array");
  std::vector<PlayerArchetype> out;
  for (const auto& j : doc) {
    try {
      PlayerArchetype a;
      a.name = j.at("name").get<std::string>();
      a.v_mean_mph = j.at("v_mean_mph").get<double>();
      a.v_sd_mph = j.at("v_sd_mph").get<double>();
      a.theta_mean_deg = j.at("theta_mean_deg").get<double>();
      a.theta_sd_deg = j.at("theta_sd_deg").get<double>();
      a.z0_mean_ft = j.at("z0_mean_ft").get<double>();
      a.z0_sd_ft = j.at("z0_sd_ft").get<double>();
      a.x0_ft = j.value("x0_ft", a.x0_ft);
      a.lateral_sd_in = j.value("lateral_sd_in", a.lateral_sd_in);
      a.rim_make_prob = j.value("rim_make_prob", a.rim_make_prob);
      a.validate();
      out.push_back(std::move(a));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArchetype(std::string("bad archetype entry: ") + e.what());
    }
  }
  return out;
}

namespace {

std::vector<ShotRecord> synthesize_player(const PlayerArchetype& a, std::size_t count, std::uint64_t seed,
                                          const CourtGeometry<double>& geom, sys_days first, int span_days) {
  Rng rng(seed);
  const double clearance_in = units::feet_to_inches(geom.rim_radius - geom.ball_radius);
  std::vector<ShotRecord> shots;
  shots.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = rng.normal(a.v_mean_mph, a.v_sd_mph);
    const double theta = rng.normal(a.theta_mean_deg, a.theta_sd_deg);
    const double z0 = rng.normal(a.z0_mean_ft, a.z0_sd_ft);
    const double lateral = rng.normal(0.0, a.lateral_sd_in);
    const bool rim_roll_in = rng.bernoulli(a.rim_make_prob);
    const int day = std::min(static_cast<int>(rng.uniform() * span_days), span_days - 1);

    ShotRecord r;
    r.player = a.name;
    r.date = year_month_day{first + days{day}};
    r.launch = LaunchConditions<double>::from_imperial(a.x0_ft, z0, v, theta);

    double x_land = 0.0;
    if (const auto c = try_landing_x(r.launch, geom)) {
      x_land = c->x_f;
      r.outcome = classify_crossing(*c, geom);
    } else {
      // Airball below rim height: use the apex, the path's closest approach.
      const double t_apex = r.launch.v0 * std::sin(r.launch.theta0) / geom.g;
      x_land = r.launch.x0 - r.launch.v0 * std::cos(r.launch.theta0) * t_apex;
      r.outcome = Outcome::Miss;
    }
    r.landing = {units::feet_to_inches(x_land - geom.bullseye_x()), lateral};

    if (r.outcome == Outcome::Swish && std::abs(lateral) > clearance_in) r.outcome = Outcome::Miss;
    r.made = r.outcome == Outcome::Swish || (r.outcome == Outcome::RimContact && rim_roll_in);
    shots.push_back(std::move(r));
  }
  std::stable_sort(shots.begin(), shots.end(), [](const ShotRecord& x, const ShotRecord& y) {
    return sys_days(x.date) < sys_days(y.date);
  });
  return shots;
}

} // namespace

std::vector<ShotRecord> synthesize_shots(std::span<const PlayerArchetype> archetypes, std::size_t shots_per_player,
                                         std::uint64_t seed, const CourtGeometry<double>& geom,
                                         const DateRange& dates, unsigned threads) {
  if (shots_per_player < 1) throw InvalidArgument("shots per player must be at least 1");
  for (const auto& a : archetypes) a.validate();
  if (!dates.first.ok() || !dates.last.ok()) throw InvalidArgument("invalid date in range");
  const sys_days first{dates.first};
  const sys_days last{dates.last};
  if (last < first) throw EmptySpan();
  const int span_days = static_cast<int>((last - first).count()) + 1;

  std::vector<std::vector<ShotRecord>> per_player(archetypes.size());
  auto work = [&](std::size_t i) {
    per_player[i] = synthesize_player(archetypes[i], shots_per_player, derive_seed(seed, i), geom, first, span_days);
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(archetypes.size(), 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < archetypes.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < archetypes.size(); i += workers) work(i);
      });
    for (auto& t : pool) t.join();
  }

  std::vector<ShotRecord> out;
  out.reserve(archetypes.size() * shots_per_player);
  for (auto& shots : per_player) std::move(shots.begin(), shots.end(), std::back_inserter(out));
  return out;
}

} // namespace ftc
