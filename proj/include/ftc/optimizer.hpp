#pragma once

// Gradient descent over (v0, theta0) at a fixed release point, pulling the rim
// crossing onto a target landing position.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "ftc/errors.hpp"
#include "ftc/physics.hpp"

namespace ftc {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// Discriminants below this are treated as grazing the rim at the apex.
inline constexpr double kSingularDiscriminant = 1e-9;

template <typename Scalar = double>
struct DescentSettings {
  Scalar learning_rate_v = Scalar(1e-2);
  Scalar learning_rate_theta = Scalar(1e-3);
  int max_iters = 10000;
  Scalar tolerance = Scalar(0.01); ///< feet, on |x_f - x_g|
  int max_halvings = 30;

  void validate() const {
    if (!(learning_rate_v > 0 && learning_rate_theta > 0))
      throw InvalidArgument("learning rates must be positive");
    if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
    if (!(tolerance > 0)) throw InvalidArgument("tolerance must be positive");
    if (max_halvings < 0) throw InvalidArgument("max_halvings must be non-negative");
  }
};

template <typename Scalar = double>
struct DescentStep {
  int iteration = 0;
  Scalar v0{};
  Scalar theta0{};
  Scalar x_f{};
  Scalar loss{};
};

template <typename Scalar = double>
struct DescentTrace {
  std::vector<DescentStep<Scalar>> steps; ///< accepted iterates, starting with the initial launch
  bool converged = false;
  LaunchConditions<Scalar> final_launch;
};

template <typename Scalar>
Scalar loss(Scalar x_f, Scalar x_g) {
  const Scalar e = x_f - x_g;
  return Scalar(0.5) * e * e;
}

/// (d x_f / d v0, d x_f / d theta0) from the closed form.
template <typename Scalar>
Vector2<Scalar> landing_x_jacobian(const LaunchConditions<Scalar>& launch, const CourtGeometry<Scalar>& geom) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const Scalar disc = rim_discriminant(launch, geom);
  if (!(disc >= 0)) throw NeverReachesRim();
  if (disc < Scalar(kSingularDiscriminant)) throw NearSingularDiscriminant();

  const Scalar v = launch.v0;
  const Scalar s = sin(launch.theta0);
  const Scalar c = cos(launch.theta0);
  const Scalar root = sqrt(disc);
  const Scalar dt = (v * s + root) / geom.g;
  // d disc / d v = 2 v s^2, d disc / d theta = 2 v^2 s c
  const Scalar ddt_dv = (s + v * s * s / root) / geom.g;
  const Scalar ddt_dtheta = (v * c + v * v * s * c / root) / geom.g;

  Vector2<Scalar> j;
  j(0) = -c * dt - v * c * ddt_dv;
  j(1) = v * s * dt - v * c * ddt_dtheta;
  return j;
}

/// (dL/dv0, dL/dtheta0) for L = (x_f - x_g)^2 / 2.
template <typename Scalar>
Vector2<Scalar> loss_gradient(const LaunchConditions<Scalar>& launch, Scalar x_g, const CourtGeometry<Scalar>& geom) {
  const Vector2<Scalar> j = landing_x_jacobian(launch, geom);
  const Scalar x_f = landing_x(launch, geom).x_f;
  return (x_f - x_g) * j;
}

namespace detail {

template <typename Scalar>
bool in_launch_domain(const LaunchConditions<Scalar>& l) {
  return l.v0 > 0 && l.theta0 > 0 && l.theta0 <= std::numbers::pi_v<Scalar> / 2;
}

} // namespace detail

/// Steps p <- p - alpha * (lr_v, lr_theta) .* grad L, halving alpha from 1 while a
/// step raises the loss or leaves the reachable launch domain. Stops when the
/// landing error is within tolerance, after max_iters accepted steps, or when no
/// halving yields a decrease.
template <typename Scalar>
DescentTrace<Scalar> optimize_launch(const LaunchConditions<Scalar>& initial, Scalar x_g,
                                     const CourtGeometry<Scalar>& geom, const DescentSettings<Scalar>& settings = {}) {
  using std::abs;
  settings.validate();

  DescentTrace<Scalar> trace;
  LaunchConditions<Scalar> current = initial;
  Scalar x_f = landing_x(current, geom).x_f;
  Scalar current_loss = loss(x_f, x_g);
  trace.steps.push_back({0, current.v0, current.theta0, x_f, current_loss});

  const Vector2<Scalar> rates(settings.learning_rate_v, settings.learning_rate_theta);

  for (int iter = 1; iter <= settings.max_iters && abs(x_f - x_g) >= settings.tolerance; ++iter) {
    Vector2<Scalar> grad;
    try {
      grad = loss_gradient(current, x_g, geom);
    } catch (const NearSingularDiscriminant&) {
      break;
    }
    const Vector2<Scalar> direction = -rates.cwiseProduct(grad);

    bool accepted = false;
    Scalar alpha = Scalar(1);
    for (int h = 0; h <= settings.max_halvings; ++h, alpha /= Scalar(2)) {
      LaunchConditions<Scalar> trial = current;
      trial.v0 += alpha * direction(0);
      trial.theta0 += alpha * direction(1);
      if (!detail::in_launch_domain(trial)) continue;
      const auto c = try_landing_x(trial, geom);
      if (!c) continue;
      const Scalar trial_loss = loss(c->x_f, x_g);
      if (trial_loss < current_loss) {
        current = trial;
        x_f = c->x_f;
        current_loss = trial_loss;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    trace.steps.push_back({iter, current.v0, current.theta0, x_f, current_loss});
  }

  trace.converged = abs(x_f - x_g) < settings.tolerance;
  trace.final_launch = current;
  return trace;
}

} // namespace ftc
