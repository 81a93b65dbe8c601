// ftc: free-throw analytics from the command line.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ftc/data.hpp"
#include "ftc/grid.hpp"
#include "ftc/metrics.hpp"
#include "ftc/optimizer.hpp"
#include "ftc/report.hpp"

namespace {

using ftc::CourtGeometry;

struct SharedOptions {
  std::string in;
  std::string out;
  std::string geom;
  unsigned threads = 1;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ftc::InvalidArgument("cannot open '" + path + "' for writing");
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ftc::InvalidArgument("cannot open '" + path + "' for reading");
  return f;
}

CourtGeometry<double> geometry_from(const std::string& path) {
  if (path.empty()) return {};
  auto f = open_in(path);
  return ftc::load_geometry(f);
}

std::vector<ftc::ShotRecord> read_shots(const std::string& path, bool lenient) {
  auto f = open_in(path);
  auto parsed = ftc::parse_shots(f, lenient ? ftc::ParseMode::Lenient : ftc::ParseMode::Strict);
  for (const auto& e : parsed.errors) std::cerr << "warning: skipped " << e.what() << '\n';
  return std::move(parsed.records);
}

std::chrono::year_month_day date_arg(const std::string& text, const char* flag) {
  const auto d = ftc::parse_date(text);
  if (!d) throw ftc::InvalidArgument(std::string(flag) + " must be YYYY-MM-DD, got '" + text + "'");
  return *d;
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
  std::filesystem::path p(path);
  const auto stem = p.stem().string();
  return (p.parent_path() / (stem + suffix)).string();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free-throw shot-quality metrics, flight model, launch maps and launch optimization"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ftc 0.1.0");

  // synth
  SharedOptions synth_opt;
  std::string players = "builtin";
  std::size_t shots = 300;
  std::uint64_t seed = 42;
  std::string start_date = ftc::format_date(ftc::DateRange{}.first);
  std::string end_date = ftc::format_date(ftc::DateRange{}.last);
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic shot CSV");
  synth->add_option("--players", players, "'builtin' or a JSON archetype file")->capture_default_str();
  synth->add_option("--shots", shots, "Shots per player")->check(CLI::PositiveNumber)->capture_default_str();
  synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
  synth->add_option("--out", synth_opt.out, "Output shot CSV")->required();
  synth->add_option("--start-date", start_date, "First shot date (YYYY-MM-DD)")->capture_default_str();
  synth->add_option("--end-date", end_date, "Last shot date (YYYY-MM-DD)")->capture_default_str();
  synth->add_option("--geom", synth_opt.geom, "JSON court geometry overrides");
  synth->add_option("--threads", synth_opt.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  // metrics
  SharedOptions metrics_opt;
  std::size_t metrics_min_attempts = 200;
  double sigma_cut = 4.0;
  bool metrics_lenient = false;
  auto* metrics = app.add_subcommand("metrics", "Filter shots and write the per-player metrics report");
  metrics->add_option("--in", metrics_opt.in, "Input shot CSV")->required();
  metrics->add_option("--out", metrics_opt.out, "Output metrics CSV")->required();
  metrics->add_option("--min-attempts", metrics_min_attempts, "Attempts needed for eligibility")->capture_default_str();
  metrics->add_option("--sigma-cut", sigma_cut, "Outlier cut in standard deviations")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  metrics->add_flag("--lenient", metrics_lenient, "Skip unparseable rows instead of failing");

  // grid
  SharedOptions grid_opt;
  std::string grid_kind;
  double grid_x0 = 18.4, grid_z0 = 9.6, grid_dv = 0.0, grid_dtheta = 0.0;
  std::string v_range = "13:16:0.01", theta_range = "35:60:0.1";
  std::string grid_json;
  auto* grid = app.add_subcommand("grid", "Evaluate an outcome or error-propagation grid");
  grid->add_option("kind", grid_kind, "outcome | error")->required()->check(CLI::IsMember({"outcome", "error"}));
  grid->add_option("--x0", grid_x0, "Release distance from baseline (ft)")->capture_default_str();
  grid->add_option("--z0", grid_z0, "Release height (ft)")->capture_default_str();
  grid->add_option("--v-range", v_range, "Speed axis MIN:MAX:STEP (MPH)")->capture_default_str();
  grid->add_option("--theta-range", theta_range, "Angle axis MIN:MAX:STEP (degrees)")->capture_default_str();
  grid->add_option("--dv", grid_dv, "Speed perturbation (MPH), error grids")->capture_default_str();
  grid->add_option("--dtheta", grid_dtheta, "Angle perturbation (degrees), error grids")->capture_default_str();
  grid->add_option("--out", grid_opt.out, "Output grid CSV")->required();
  grid->add_option("--json", grid_json, "Sidecar metadata JSON (default: <out stem>.json)");
  grid->add_option("--geom", grid_opt.geom, "JSON court geometry overrides");
  grid->add_option("--threads", grid_opt.threads, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  // optimize
  SharedOptions opt_opt;
  double opt_x0 = 18.4, opt_z0 = 9.6, opt_v = 14.0, opt_theta = 42.0;
  std::optional<double> opt_target;
  ftc::DescentSettings<double> settings;
  double traj_step = 0.001;
  std::string traj_initial, traj_final;
  auto* optimize = app.add_subcommand("optimize", "Gradient descent from a launch onto the bullseye");
  optimize->add_option("--x0", opt_x0, "Release distance from baseline (ft)")->capture_default_str();
  optimize->add_option("--z0", opt_z0, "Release height (ft)")->capture_default_str();
  optimize->add_option("--v", opt_v, "Initial launch speed (MPH)")->capture_default_str();
  optimize->add_option("--theta", opt_theta, "Initial launch angle (degrees)")->capture_default_str();
  optimize->add_option("--target", opt_target, "Target landing x (ft, default: bullseye)");
  optimize->add_option("--lr-v", settings.learning_rate_v, "Speed learning rate (ft/s scale)")->capture_default_str();
  optimize->add_option("--lr-theta", settings.learning_rate_theta, "Angle learning rate (rad scale)")
      ->capture_default_str();
  optimize->add_option("--max-iters", settings.max_iters, "Iteration cap")->capture_default_str();
  optimize->add_option("--tol", settings.tolerance, "Landing tolerance (ft)")->capture_default_str();
  optimize->add_option("--out", opt_opt.out, "Output trace CSV")->required();
  optimize->add_option("--traj-initial", traj_initial, "Initial trajectory CSV (default: <out stem>_initial.csv)");
  optimize->add_option("--traj-final", traj_final, "Optimized trajectory CSV (default: <out stem>_final.csv)");
  optimize->add_option("--traj-step", traj_step, "Trajectory sample spacing (s)")->capture_default_str();
  optimize->add_option("--geom", opt_opt.geom, "JSON court geometry overrides");

  // validate
  SharedOptions val_opt;
  std::string split_date = "2024-11-15";
  std::size_t val_min_attempts = 50;
  bool val_lenient = false;
  auto* validate = app.add_subcommand("validate", "Split-half predictive validity of FT% and command");
  validate->add_option("--in", val_opt.in, "Input shot CSV")->required();
  validate->add_option("--out", val_opt.out, "Output JSON (default: stdout)");
  validate->add_option("--split-date", split_date, "First date of the late half (YYYY-MM-DD)")->capture_default_str();
  validate->add_option("--min-attempts", val_min_attempts, "Attempts needed on each side")->capture_default_str();
  validate->add_flag("--lenient", val_lenient, "Skip unparseable rows instead of failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
  }

  try {
    if (*synth) {
      const auto geom = geometry_from(synth_opt.geom);
      std::vector<ftc::PlayerArchetype> archetypes;
      if (players == "builtin") {
        archetypes = ftc::builtin_archetypes();
      } else {
        auto f = open_in(players);
        archetypes = ftc::load_archetypes(f);
      }
      const ftc::DateRange range{date_arg(start_date, "--start-date"), date_arg(end_date, "--end-date")};
      const auto records = ftc::synthesize_shots(archetypes, shots, seed, geom, range, synth_opt.threads);
      auto f = open_out(synth_opt.out);
      ftc::write_shots(f, records);
      const auto made = std::count_if(records.begin(), records.end(), [](const auto& r) { return r.made; });
      std::printf("players=%zu shots=%zu make_rate=%.4f\n", archetypes.size(), records.size(),
                  records.empty() ? 0.0 : static_cast<double>(made) / static_cast<double>(records.size()));
    } else if (*metrics) {
      const auto records = read_shots(metrics_opt.in, metrics_lenient);
      const auto filtered = ftc::filter_outliers(records, sigma_cut);
      const auto eligible = ftc::eligible_players(filtered.kept, metrics_min_attempts);
      if (eligible.empty())
        std::cerr << "warning: no player has " << metrics_min_attempts << " attempts after filtering\n";
      const auto rows = ftc::league_metrics(filtered.kept, eligible);
      auto f = open_out(metrics_opt.out);
      ftc::write_metrics_csv(f, rows);
      std::printf("shots=%zu removed=%zu eligible_players=%zu\n", filtered.report.input, filtered.report.removed,
                  rows.size());
    } else if (*grid) {
      const auto geom = geometry_from(grid_opt.geom);
      const auto v_axis = ftc::AxisSpec::parse(v_range);
      const auto theta_axis = ftc::AxisSpec::parse(theta_range);
      const std::string meta_path = grid_json.empty() ? sibling_path(grid_opt.out, ".json") : grid_json;
      nlohmann::json meta;
      {
        auto f = open_out(grid_opt.out);
        if (grid_kind == "outcome") {
          const auto g = ftc::outcome_grid(v_axis, theta_axis, grid_x0, grid_z0, geom, grid_opt.threads);
          ftc::write_grid_csv(f, g);
          meta = ftc::grid_metadata(g, geom);
        } else {
          const auto g = ftc::error_grid(v_axis, theta_axis, grid_x0, grid_z0, grid_dv, grid_dtheta, geom,
                                         grid_opt.threads);
          ftc::write_grid_csv(f, g);
          meta = ftc::grid_metadata(g, geom);
          std::printf("max_ft=%.6f min_ft=%.6f\n", g.values.maxCoeff(), g.values.minCoeff());
        }
      }
      auto mf = open_out(meta_path);
      mf << meta.dump(2) << '\n';
    } else if (*optimize) {
      const auto geom = geometry_from(opt_opt.geom);
      const auto initial = ftc::LaunchConditions<double>::from_imperial(opt_x0, opt_z0, opt_v, opt_theta);
      const double target = opt_target.value_or(geom.bullseye_x());
      const auto trace = ftc::optimize_launch(initial, target, geom, settings);
      {
        auto f = open_out(opt_opt.out);
        ftc::write_trace_csv(f, trace);
      }
      const auto write_path = [&](const std::string& path, const ftc::LaunchConditions<double>& launch) {
        auto f = open_out(path);
        const auto samples = ftc::simulate_trajectory(launch, geom, traj_step);
        ftc::write_trajectory_csv(f, samples);
      };
      write_path(traj_initial.empty() ? sibling_path(opt_opt.out, "_initial.csv") : traj_initial, initial);
      write_path(traj_final.empty() ? sibling_path(opt_opt.out, "_final.csv") : traj_final, trace.final_launch);
      const auto& last = trace.steps.back();
      const auto outcome = ftc::classify_outcome(trace.final_launch, geom);
      std::printf("converged=%s iterations=%d v_mph=%.6f theta_deg=%.6f xf_ft=%.6f outcome=%s\n",
                  trace.converged ? "true" : "false", last.iteration, trace.final_launch.v0_mph(),
                  trace.final_launch.theta_deg(), last.x_f, std::string(ftc::outcome_label(outcome)).c_str());
    } else if (*validate) {
      const auto records = read_shots(val_opt.in, val_lenient);
      const auto report = ftc::split_half_validity(records, date_arg(split_date, "--split-date"), val_min_attempts);
      const auto text = ftc::to_json(report).dump(2) + "\n";
      if (val_opt.out.empty()) {
        std::cout << text;
      } else {
        auto f = open_out(val_opt.out);
        f << text;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
