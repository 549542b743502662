#include "wgflow/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wgflow/quadrature.hpp"

namespace wgflow {

namespace {

bool periodic_compatible(const SystemParams& p) {
  const double r = std::remainder(p.k1 * p.length, std::numbers::pi);
  return std::abs(r) < 1e-9 * std::max(1.0, std::abs(p.k1 * p.length));
}

void require_periodic_compatible(const SystemParams& p) {
  if (!periodic_compatible(p))
    throw invalid_parameter(
        "periodic wrapping requires k1 L to be a multiple of pi");
}

}  // namespace

TrajectoryPath integrate_analytic(const DensityProfile& profile, double c,
                                  double x0, double t_final,
                                  BoundaryPolicy policy,
                                  std::size_t n_samples) {
  profile.params().require_in_domain(x0);
  if (t_final < 0.0) throw invalid_parameter("t_final must be nonnegative");
  if (n_samples < 2) n_samples = 2;
  const double L = profile.length();
  if (policy == BoundaryPolicy::Periodic)
    require_periodic_compatible(profile.params());

  TrajectoryPath path;
  if (c == 0.0 || t_final == 0.0) {
    // stationary flow or zero horizon: degenerate constant path
    path.samples.push_back({0.0, x0});
    if (t_final > 0.0) path.samples.push_back({t_final, x0});
    return path;
  }

  const double u0 = profile.cdf(x0);
  double t_end = t_final;
  if (policy == BoundaryPolicy::Absorb) {
    const double t_exit = c > 0.0 ? (1.0 - u0) / c : -u0 / c;
    if (t_final >= t_exit) {
      t_end = t_exit;
      path.terminal = TrajectoryPath::Terminal::Absorbed;
      path.absorb_time = t_exit;
    }
  }

  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = t_end * static_cast<double>(i) /
                     static_cast<double>(n_samples - 1);
    double u = u0 + c * t;
    double x;
    if (policy == BoundaryPolicy::Periodic) {
      u -= std::floor(u);
      x = profile.inverse_cdf(u);
    } else {
      x = profile.inverse_cdf(std::clamp(u, 0.0, 1.0));
    }
    path.samples.push_back({t, x});
  }
  if (path.terminal == TrajectoryPath::Terminal::Absorbed)
    path.samples.back().x = c > 0.0 ? L : 0.0;
  return path;
}

double transit_time(const DensityProfile& profile, double c, double x0) {
  profile.params().require_in_domain(x0);
  if (!(c > 0.0)) throw direction_error("transit time needs c > 0");
  return (1.0 - profile.cdf(x0)) / c;
}

// ---------------------------------------------------------------------------
// adaptive Dormand-Prince 5(4)

namespace {

struct Dopri5 {
  // Butcher tableau
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

class Stepper {
 public:
  Stepper(const VelocityField& field, BoundaryPolicy policy, double length)
      : field_(field), policy_(policy), length_(length) {}

  double deriv(double x) const {
    if (policy_ == BoundaryPolicy::Periodic) {
      x -= length_ * std::floor(x / length_);
    } else {
      x = std::clamp(x, 0.0, length_);
    }
    return field_(x);
  }

  // one DP5 step; returns (x_new, error estimate)
  std::pair<double, double> step(double x, double h) const {
    using D = Dopri5;
    const double k1 = deriv(x);
    const double k2 = deriv(x + h * D::a21 * k1);
    const double k3 = deriv(x + h * (D::a31 * k1 + D::a32 * k2));
    const double k4 = deriv(x + h * (D::a41 * k1 + D::a42 * k2 + D::a43 * k3));
    const double k5 = deriv(x + h * (D::a51 * k1 + D::a52 * k2 + D::a53 * k3 +
                                     D::a54 * k4));
    const double k6 = deriv(x + h * (D::a61 * k1 + D::a62 * k2 + D::a63 * k3 +
                                     D::a64 * k4 + D::a65 * k5));
    const double x5 = x + h * (D::b1 * k1 + D::b3 * k3 + D::b4 * k4 +
                               D::b5 * k5 + D::b6 * k6);
    const double k7 = deriv(x5);
    const double err = h * (D::e1 * k1 + D::e3 * k3 + D::e4 * k4 + D::e5 * k5 +
                            D::e6 * k6 + D::e7 * k7);
    return {x5, std::abs(err)};
  }

 private:
  const VelocityField& field_;
  BoundaryPolicy policy_;
  double length_;
};

}  // namespace

TrajectoryPath integrate_ode(const VelocityField& field, double x0,
                             double t_final, BoundaryPolicy policy,
                             const OdeControls& controls) {
  const double L = field.domain_length();
  if (!(x0 >= 0.0 && x0 <= L)) throw domain_error("x0 outside [0, L]");
  if (t_final < 0.0) throw invalid_parameter("t_final must be nonnegative");

  TrajectoryPath path;
  path.samples.push_back({0.0, x0});
  if (t_final == 0.0) return path;

  const double guard =
      controls.node_guard > 0.0 ? controls.node_guard : 1e-3 * L;
  const std::vector<double> nodes = field.nodes();

  if (policy == BoundaryPolicy::Periodic &&
      field.kind() != VelocityField::Kind::PhaseGradient) {
    // wrap requires density continuity across x = 0 == L
    const double r0 = field.density(0.0);
    const double rL = field.density(L);
    if (std::abs(r0 - rL) > 1e-9 * std::max(1.0, r0 + rL))
      throw invalid_parameter(
          "periodic wrapping requires matching densities at x = 0 and x = L");
  }

  Stepper stepper(field, policy, L);
  double t = 0.0;
  double x = x0;
  std::size_t steps = 0;

  // abs(1/v); integrand of the position-variable formulation, regular at nodes
  auto inv_speed = [&](double xi) {
    const double v = field(xi);
    if (!std::isfinite(v)) return 0.0;
    return 1.0 / std::abs(v);
  };

  auto nearest_node = [&](double at) -> const double* {
    const double* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const double& n : nodes) {
      const double d = std::abs(n - at);
      if (d < best_d) {
        best_d = d;
        best = &n;
      }
    }
    return best;
  };

  double v_now = stepper.deriv(x);
  if (!std::isfinite(v_now) && nodes.empty())
    throw integration_error("velocity field diverges away from any node");
  const double dir = v_now >= 0.0 || !std::isfinite(v_now)
                         ? (field.flux_constant() < 0.0 ? -1.0 : 1.0)
                         : -1.0;
  double dt = std::min(t_final, 1e-2 * L / std::max(std::abs(v_now), 1.0));
  if (!std::isfinite(dt) || dt <= 0.0) dt = 1e-6 * t_final;

  const double t_eps = 1e-15 * std::max(1.0, t_final);

  while (t < t_final - t_eps) {
    if (++steps > controls.max_steps) {
      path.terminal = TrajectoryPath::Terminal::StepLimit;
      return path;
    }

    const double* node = nearest_node(x);
    // the hop triggers early (2x guard) so plain time steps never have to
    // creep asymptotically up to the zone boundary
    const bool in_guard = node && std::abs(x - *node) < 2.0 * guard &&
                          // already past the zone exit: treat as outside
                          !(dir > 0.0 ? x >= *node + guard : x <= *node - guard);

    if (in_guard) {
      // hop through the node zone with position as the independent variable
      double xb = *node + dir * guard;
      bool hits_boundary = false;
      if (xb > L) { xb = L; hits_boundary = true; }
      if (xb < 0.0) { xb = 0.0; hits_boundary = true; }
      const double lo = std::min(x, xb), hi = std::max(x, xb);
      const double dt_full = hi > lo ? integrate(inv_speed, lo, hi, 1e-13)
                                     : 0.0;
      if (t + dt_full <= t_final || dt_full == 0.0) {
        t += dt_full;
        x = xb;
        path.samples.push_back({t, x});
        if (hits_boundary) {
          if (policy == BoundaryPolicy::Absorb) {
            path.terminal = TrajectoryPath::Terminal::Absorbed;
            path.absorb_time = t;
            return path;
          }
          x = xb >= L ? 0.0 : L;  // wrap
        }
        continue;
      }
      // stop inside the zone exactly at t_final: bisect on the hop time
      double a = x, b = xb;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double dtm = integrate(inv_speed, std::min(x, mid),
                                     std::max(x, mid), 1e-13);
        if (t + dtm < t_final)
          a = mid;
        else
          b = mid;
        if (std::abs(b - a) < 1e-15 * L) break;
      }
      x = 0.5 * (a + b);
      t = t_final;
      path.samples.push_back({t, x});
      return path;
    }

    // plain time step; a step that would pierce the node zone blows up the
    // embedded error estimate and gets rejected, shrinking dt until the
    // trajectory lands inside the zone and the hop takes over
    const double h = std::min(dt, t_final - t);
    auto [x_new, err] = stepper.step(x, h);
    const double tol = controls.abs_tol + controls.rel_tol * std::abs(x);
    if (!std::isfinite(err) || !std::isfinite(x_new)) {
      dt = 0.25 * h;
      continue;
    }
    if (err > tol) {
      dt = h * std::clamp(0.9 * std::pow(tol / err, 0.2), 0.2, 1.0);
      continue;
    }

    t += h;
    x = x_new;
    dt = h * std::clamp(0.9 * std::pow(tol / std::max(err, 1e-300), 0.2), 0.2,
                        5.0);

    if (x > L || x < 0.0) {
      if (policy == BoundaryPolicy::Periodic) {
        x -= L * std::floor(x / L);
      } else {
        // locate the boundary crossing inside the accepted step
        const double target = x > L ? L : 0.0;
        double prev_x = path.samples.back().x;
        double prev_t = path.samples.back().t;
        double lo = 0.0, hi = h;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double xm = stepper.step(prev_x, mid).first;
          if ((target == L && xm < L) || (target == 0.0 && xm > 0.0))
            lo = mid;
          else
            hi = mid;
        }
        path.terminal = TrajectoryPath::Terminal::Absorbed;
        path.absorb_time = prev_t + 0.5 * (lo + hi);
        path.samples.push_back({path.absorb_time, target});
        return path;
      }
    }
    path.samples.push_back({t, x});
  }
  return path;
}

}  // namespace wgflow
