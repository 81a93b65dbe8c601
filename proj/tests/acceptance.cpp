// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "ftc/data.hpp"
#include "ftc/grid.hpp"
#include "ftc/metrics.hpp"
#include "ftc/optimizer.hpp"
#include "ftc/random.hpp"
#include "oracle.hpp"

using namespace ftc;
using Launch = LaunchConditions<double>;

namespace {

const CourtGeometry<double> court{};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1. Closed form against step integration.
Verdict oracle_equivalence() {
  constexpr double kTol = 1e-4;
  Rng rng(1001);
  int checked = 0;
  double worst = 0.0;
  while (checked < 1000) {
    const double v = 10 + 8 * rng.uniform();
    const double th = 30 + 35 * rng.uniform();
    const double z0 = 7 + 3 * rng.uniform();
    const auto l = Launch::from_imperial(18.5, z0, v, th);
    const auto c = try_landing_x(l, court);
    const auto ref = oracle::step_integrated_crossing(18.5, z0, v, th, court.g, court.rim_height, 1e-5);
    if (!c && !ref) continue;
    if (!c || !ref) return {false, fmt("reachability disagrees at v=%.4f theta=%.4f", v, th)};
    worst = std::max(worst, std::abs(c->x_f - ref->x));
    ++checked;
  }
  return {worst < kTol, fmt("1000 launches, max |dx| = %.3e ft (tol %.0e)", worst, kTol)};
}

// 2. Categorical outcomes at the Giannis release.
Verdict golden_classifications() {
  struct Case {
    double v, th;
    Outcome expected;
  };
  const Case cases[] = {{14.4, 46, Outcome::Swish},
                        {14.4, 44, Outcome::Swish},
                        {14.5, 39, Outcome::Swish},
                        {14.5, 37, Outcome::RimContact}};
  std::string detail;
  bool ok = true;
  for (const auto& c : cases) {
    const auto got = classify_outcome(Launch::from_imperial(18.4, 9.6, c.v, c.th), court);
    ok = ok && got == c.expected;
    detail += fmt("(%.1f,%.0f)->", c.v, c.th) + std::string(outcome_label(got)) + " ";
  }
  detail.pop_back();
  return {ok, detail};
}

// 3. Swish band velocity width peaks at a mid-range angle.
Verdict band_width_peak() {
  const AxisSpec v{12.0, 18.0, 0.01};
  const AxisSpec th{35.0, 60.0, 1.0};
  const auto g = outcome_grid(v, th, 18.5, 8.4, court, 4);
  int best_count = -1;
  double best_angle = 0.0;
  for (Eigen::Index r = 0; r < g.cells.rows(); ++r) {
    const int n = static_cast<int>((g.cells.row(r) == static_cast<int>(Outcome::Swish)).count());
    if (n > best_count) {
      best_count = n;
      best_angle = th.value(static_cast<std::size_t>(r));
    }
  }
  const bool ok = best_angle >= 43.0 && best_angle <= 52.0;
  return {ok, fmt("widest row at theta=%.0f deg (%.0f cells at 0.01 MPH), required [43, 52]", best_angle,
                  static_cast<double>(best_count))};
}

// 4. Curry error grid magnitude.
Verdict error_grid_magnitude() {
  const auto g = error_grid({13.0, 16.0, 0.01}, {35.0, 60.0, 0.1}, 18.5, 8.4, 0.24, 1.11, court, 4);
  const double hi = g.values.maxCoeff();
  const double lo = g.values.minCoeff();
  const bool ok = hi >= 0.8 && lo <= 0.2;
  return {ok, fmt("max=%.4f ft (>= 0.8), min=%.4f ft (<= 0.2)", hi, lo)};
}

// 5. Analytic gradient and the descent from a flat miss.
Verdict gradient_and_descent() {
  constexpr double kRel = 1e-5;
  const double target = court.bullseye_x();
  Rng rng(505);
  int checked = 0;
  double worst = 0.0;
  while (checked < 500) {
    const auto l = Launch::from_imperial(18.5, 7 + 3 * rng.uniform(), 10 + 8 * rng.uniform(), 30 + 35 * rng.uniform());
    if (rim_discriminant(l, court) < 1e-2) continue;
    ++checked;
    const auto g = loss_gradient(l, target, court);
    const double h = 1e-6;
    auto eval = [&](double dv, double dth) {
      Launch p = l;
      p.v0 += dv;
      p.theta0 += dth;
      return loss(landing_x(p, court).x_f, target);
    };
    const Vector2<double> fd{(eval(h, 0) - eval(-h, 0)) / (2 * h), (eval(0, h) - eval(0, -h)) / (2 * h)};
    if (fd.norm() > 0) worst = std::max(worst, (g - fd).norm() / fd.norm());
  }
  const auto trace = optimize_launch(Launch::from_imperial(18.4, 9.6, 14.0, 42.0), target, court);
  const double miss = std::abs(landing_x(trace.final_launch, court).x_f - target);
  const auto outcome = classify_outcome(trace.final_launch, court);
  const bool ok = worst < kRel && trace.converged && miss < 0.01 && outcome == Outcome::Swish;
  return {ok, fmt("max gradient rel err %.2e over 500 launches; descent |xf-xg|=%.4f ft in %.0f iterations, ", worst,
                  miss, static_cast<double>(trace.steps.back().iteration)) +
                  std::string(outcome_label(outcome))};
}

// 6. Command metric.
Verdict command_properties() {
  bool ok = command(0, 0) == 1.0 && command(3, 4) == 1.0 / 6.0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double c = command(i, j);
      if (i + 1 < 20) ok = ok && command(i + 1, j) < c;
      if (j + 1 < 20) ok = ok && command(i, j + 1) < c;
    }
  return {ok, "C(0,0)=1, C(3,4)=1/6, strictly decreasing over 20x20"};
}

// 7. Standardization, scaling endpoints and percentile range.
Verdict metrics_structure() {
  Rng rng(77);
  PlayerValues sd_v, sd_theta;
  for (int p = 0; p < 72; ++p) {
    const auto name = "p" + std::to_string(p);
    sd_v[name] = 0.1 + 0.4 * rng.uniform();
    sd_theta[name] = 0.5 + 2.5 * rng.uniform();
  }
  const auto zv = inconsistency_zscores(sd_v);
  const auto zt = inconsistency_zscores(sd_theta);
  double sum = 0, sq = 0;
  for (const auto& [_, z] : zv) sum += z;
  const double mean = sum / static_cast<double>(zv.size());
  for (const auto& [_, z] : zv) sq += (z - mean) * (z - mean);
  const double sd = std::sqrt(sq / static_cast<double>(zv.size()));

  auto endpoints = [](const PlayerValues& m) {
    double lo = 1e300, hi = -1e300;
    for (const auto& [_, v] : m) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::pair{lo, hi};
  };
  const auto [c_lo, c_hi] = endpoints(consistency(zv));
  const auto [t_lo, t_hi] = endpoints(touch(zt, zv));

  const auto pct = percentile_rank(sd_v);
  int p_lo = 101, p_hi = 0;
  for (const auto& [_, p] : pct) {
    p_lo = std::min(p_lo, p);
    p_hi = std::max(p_hi, p);
  }
  const bool ok = std::abs(mean) < 1e-12 && std::abs(sd - 1) < 1e-12 && c_lo == 0 && c_hi == 100 && t_lo == 0 &&
                  t_hi == 100 && p_lo == 1 && p_hi == 100;
  return {ok, fmt("z mean=%.1e sd=%.12f; ", mean, sd) + fmt("consistency [%.0f, %.0f], ", c_lo, c_hi) +
                  fmt("touch [%.0f, %.0f]; ", t_lo, t_hi) +
                  fmt("percentiles [%.0f, %.0f] over 72 players", p_lo, p_hi)};
}

// 8. Synthetic league end to end.
Verdict synthetic_league() {
  const auto builtin = synthesize_shots(builtin_archetypes(), 300, 42, court);
  auto rate = [&](const std::string& who) {
    double made = 0, n = 0;
    for (const auto& s : builtin)
      if (s.player == who) {
        ++n;
        made += s.made;
      }
    return made / n;
  };
  const double curry = rate("Stephen Curry");
  const double giannis = rate("Giannis Antetokounmpo");

  Rng rng(2024);
  std::vector<PlayerArchetype> league;
  for (int p = 0; p < 50; ++p)
    league.push_back({"player" + std::to_string(p), 15.13, 0.1 + 0.3 * rng.uniform(), 50.97,
                      0.6 + 2.0 * rng.uniform(), 8.4, 0.05 + 0.2 * rng.uniform(), 18.5});
  const DateRange dates{};
  const auto shots = synthesize_shots(league, 300, 42, court, dates, 4);
  const auto filtered = filter_outliers(shots);
  const auto rows = league_metrics(filtered.kept, eligible_players(filtered.kept, 200));
  std::vector<double> touch_v, command_v;
  for (const auto& m : rows) {
    touch_v.push_back(m.touch);
    command_v.push_back(m.command);
  }
  const double r_touch = pearson_r(touch_v, command_v);

  using namespace std::chrono;
  const auto first = sys_days{dates.first};
  const auto mid = year_month_day{first + (sys_days{dates.last} - first) / 2};
  const auto split = split_half_validity(shots, mid, 50);

  const bool ok = curry > giannis && r_touch > 0.4 && split.r_command > 0.5 && rows.size() == 50;
  return {ok, fmt("make rate Curry %.3f > Giannis %.3f; ", curry, giannis) +
                  fmt("r(touch, command)=%.3f over %.0f players; ", r_touch, static_cast<double>(rows.size())) +
                  fmt("split-half r_command=%.3f", split.r_command)};
}

// 9. CLI reruns are byte-identical regardless of threads.
Verdict cli_determinism() {
  testing::Scratch s("acceptance");
  std::vector<std::string> mismatched;
  auto same = [&](const std::string& label, const std::string& a, const std::string& b) {
    if (s.read(a).empty() || s.read(a) != s.read(b)) mismatched.push_back(label);
  };
  auto run = [&](const std::string& args) {
    const auto r = s.run(args);
    if (r.status != 0) mismatched.push_back("exit " + std::to_string(r.status) + ": " + args);
    return r.out;
  };

  const auto o1 = run("synth --seed 42 --shots 300 --threads 1 --out " + s.path("s1.csv"));
  const auto o2 = run("synth --seed 42 --shots 300 --threads 4 --out " + s.path("s2.csv"));
  same("synth", "s1.csv", "s2.csv");
  if (o1 != o2) mismatched.push_back("synth stdout");

  run("metrics --in " + s.path("s1.csv") + " --out " + s.path("m1.csv"));
  run("metrics --in " + s.path("s1.csv") + " --out " + s.path("m2.csv"));
  same("metrics", "m1.csv", "m2.csv");

  for (const char* kind : {"outcome", "error"}) {
    const std::string k = kind;
    const std::string flags = "grid " + k + " --x0 18.5 --z0 8.4 --dv 0.24 --dtheta 1.11 ";
    run(flags + "--threads 1 --out " + s.path(k + "1.csv"));
    run(flags + "--threads 3 --out " + s.path(k + "2.csv"));
    same("grid " + k, k + "1.csv", k + "2.csv");
    same("grid " + k + " sidecar", k + "1.json", k + "2.json");
  }

  const auto p1 = run("optimize --v 14.0 --theta 42 --out " + s.path("t1.csv"));
  const auto p2 = run("optimize --v 14.0 --theta 42 --out " + s.path("t2.csv"));
  same("optimize trace", "t1.csv", "t2.csv");
  same("optimize initial", "t1_initial.csv", "t2_initial.csv");
  same("optimize final", "t1_final.csv", "t2_final.csv");
  if (p1 != p2) mismatched.push_back("optimize stdout");

  run("validate --split-date 2025-01-17 --in " + s.path("s1.csv") + " --out " + s.path("v1.json"));
  run("validate --split-date 2025-01-17 --in " + s.path("s2.csv") + " --out " + s.path("v2.json"));
  same("validate", "v1.json", "v2.json");

  std::string detail = "synth, metrics, grid outcome/error, optimize, validate rerun";
  for (const auto& m : mismatched) detail += "; differs: " + m;
  return {mismatched.empty(), detail};
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "closed-form landing matches step integration", oracle_equivalence},
      {2, "reference launches classify as expected", golden_classifications},
      {3, "swish band is widest between 43 and 52 degrees", band_width_peak},
      {4, "error grid spans up to a foot with a near-zero band", error_grid_magnitude},
      {5, "gradient check and descent onto the bullseye", gradient_and_descent},
      {6, "command metric properties", command_properties},
      {7, "z-scores, scaling endpoints and percentile range", metrics_structure},
      {8, "synthetic league end to end", synthetic_league},
      {9, "CLI outputs are deterministic", cli_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict r;
    try {
      r = c.check();
    } catch (const std::exception& e) {
      r = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", c.id, c.name, r.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
