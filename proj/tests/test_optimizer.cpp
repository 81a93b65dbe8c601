#include <doctest.h>

#include <numbers>

#include "ftc/optimizer.hpp"
#include "ftc/random.hpp"

using namespace ftc;
using Launch = LaunchConditions<double>;

namespace {

const CourtGeometry<double> court{};
const double bullseye = court.bullseye_x();

Vector2<double> central_difference(const Launch& l, double x_g, double h = 1e-6) {
  auto eval = [&](double dv, double dth) {
    Launch p = l;
    p.v0 += dv;
    p.theta0 += dth;
    return loss(landing_x(p, court).x_f, x_g);
  };
  return {(eval(h, 0) - eval(-h, 0)) / (2 * h), (eval(0, h) - eval(0, -h)) / (2 * h)};
}

} // namespace

TEST_CASE("loss") {
  CHECK(loss(5.0, 5.0) == 0.0);
  CHECK(loss(7.0, 5.0) == 2.0);
  CHECK(loss(4.94, 5.0 + 1.0 / 12) == doctest::Approx(0.5 * 0.14333333 * 0.14333333).epsilon(1e-6));
  CHECK(loss(4.94, 5.0 + 1.0 / 12) == doctest::Approx(0.01027).epsilon(1e-3));
}

TEST_CASE("loss_gradient") {
  const auto giannis = Launch::from_imperial(18.4, 9.6, 14.4, 46.0);

  SUBCASE("zero on target") {
    const double x_f = landing_x(giannis, court).x_f;
    const auto g = loss_gradient(giannis, x_f, court);
    CHECK(g(0) == 0.0);
    CHECK(g(1) == 0.0);
  }
  SUBCASE("matches central differences at the reference shot") {
    const auto g = loss_gradient(giannis, bullseye, court);
    const auto fd = central_difference(giannis, bullseye);
    CHECK((g - fd).norm() / fd.norm() < 1e-5);
  }
  SUBCASE("short shots want more speed") {
    const auto short_shot = Launch::from_imperial(18.4, 9.6, 13.8, 46.0);
    REQUIRE(landing_x(short_shot, court).x_f > bullseye);
    CHECK(loss_gradient(short_shot, bullseye, court)(0) < 0);
    const auto long_shot = Launch::from_imperial(18.4, 9.6, 15.0, 46.0);
    REQUIRE(landing_x(long_shot, court).x_f < bullseye);
    CHECK(loss_gradient(long_shot, bullseye, court)(0) > 0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(loss_gradient(Launch{18.4, 9.6, 1.0, 0.8}, bullseye, court), NeverReachesRim);
    // Apex exactly at rim height.
    const double vz = std::sqrt(2 * court.g * 0.4);
    const Launch grazing{18.4, 9.6, vz * (1 + 1e-12) / std::sin(0.8), 0.8};
    REQUIRE(rim_discriminant(grazing, court) >= 0);
    CHECK_THROWS_AS(loss_gradient(grazing, bullseye, court), NearSingularDiscriminant);
  }
  SUBCASE("random reachable launches") {
    Rng rng(11);
    int checked = 0;
    while (checked < 200) {
      const auto l = Launch::from_imperial(18.5, 7 + 3 * rng.uniform(), 10 + 8 * rng.uniform(), 30 + 35 * rng.uniform());
      if (rim_discriminant(l, court) < 1e-2) continue;
      ++checked;
      const auto g = loss_gradient(l, bullseye, court);
      const auto fd = central_difference(l, bullseye);
      CHECK((g - fd).norm() / fd.norm() < 1e-5);
    }
  }
}

TEST_CASE("optimize_launch") {
  SUBCASE("already on target") {
    const auto l = Launch::from_imperial(18.4, 9.6, 14.4, 46.0);
    const auto trace = optimize_launch(l, landing_x(l, court).x_f, court);
    CHECK(trace.converged);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].iteration == 0);
    CHECK(trace.final_launch == l);
  }
  SUBCASE("Giannis flat miss is pulled into a swish") {
    const auto l = Launch::from_imperial(18.4, 9.6, 14.0, 42.0);
    const auto trace = optimize_launch(l, bullseye, court);
    CHECK(trace.converged);
    CHECK(std::abs(landing_x(trace.final_launch, court).x_f - bullseye) < 0.01);
    CHECK(classify_outcome(trace.final_launch, court) == Outcome::Swish);
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
      CHECK(trace.steps[i].loss <= trace.steps[i - 1].loss);
      CHECK(trace.steps[i].iteration == static_cast<int>(i));
    }

    // Replaying the converged launch stops immediately.
    const auto again = optimize_launch(trace.final_launch, bullseye, court);
    CHECK(again.steps.size() == 1);
    CHECK(again.converged);
  }
  SUBCASE("one tiny step cannot converge") {
    DescentSettings<double> s;
    s.max_iters = 1;
    s.learning_rate_v = 1e-9;
    s.learning_rate_theta = 1e-9;
    const auto trace = optimize_launch(Launch::from_imperial(18.4, 9.6, 12.0, 46.0), bullseye, court, s);
    CHECK_FALSE(trace.converged);
    CHECK(trace.steps.size() <= 2);
  }
  SUBCASE("vertical launch runs") {
    const Launch vertical{18.4, 9.6, 30.0, std::numbers::pi / 2};
    DescentTrace<double> trace;
    CHECK_NOTHROW(trace = optimize_launch(vertical, bullseye, court));
    CHECK(trace.steps.size() >= 1);
    for (std::size_t i = 1; i < trace.steps.size(); ++i) CHECK(trace.steps[i].loss <= trace.steps[i - 1].loss);
  }
  SUBCASE("settings and unreachable starts") {
    DescentSettings<double> s;
    s.learning_rate_v = 0;
    CHECK_THROWS_AS(optimize_launch(Launch::from_imperial(18.4, 9.6, 14.0, 42.0), bullseye, court, s), InvalidArgument);
    CHECK_THROWS_AS(optimize_launch(Launch{18.4, 9.6, 1.0, 0.8}, bullseye, court), NeverReachesRim);
  }
}

TEST_CASE("convergence basin around a known swish") {
  Rng rng(3);
  for (int k = 0; k < 40; ++k) {
    const double v = 14.4 + (2 * rng.uniform() - 1);
    const double th = 46.0 + 5 * (2 * rng.uniform() - 1);
    const auto l = Launch::from_imperial(18.4, 9.6, v, th);
    const auto trace = optimize_launch(l, bullseye, court);
    CHECK(trace.converged);
    CHECK(trace.steps.size() <= 10001);
    CHECK(std::abs(trace.steps.back().x_f - bullseye) < 0.01);
  }
}
