#ifndef WGFLOW_TRAJECTORY_HPP
#define WGFLOW_TRAJECTORY_HPP

#include <cstddef>
#include <vector>

#include "wgflow/density.hpp"
#include "wgflow/velocity.hpp"

namespace wgflow {

enum class BoundaryPolicy {
  Absorb,   // terminate at x = L (or x = 0 for leftward flow)
  Periodic  // wrap modulo L; requires k1 L in pi*Z so rho is continuous
};

struct TrajectoryPath {
  enum class Terminal { Completed, Absorbed, StepLimit };
  struct Sample {
    double t;
    double x;
  };
  std::vector<Sample> samples;
  Terminal terminal = Terminal::Completed;
  double absorb_time = 0.0;  // valid when terminal == Absorbed

  double final_position() const { return samples.back().x; }
  double final_time() const { return samples.back().t; }
};

/// Exact flow of the continuity velocity: x(t) = F^{-1}(F(x0) + c t).
/// Crosses density nodes in finite time. c = 0 yields a degenerate
/// constant path.
TrajectoryPath integrate_analytic(const DensityProfile& profile, double c,
                                  double x0, double t_final,
                                  BoundaryPolicy policy,
                                  std::size_t n_samples = 65);

struct OdeControls {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_steps = 1'000'000;
  double node_guard = -1.0;  // < 0 means 1e-3 * L
};

/// Adaptive embedded Runge-Kutta integration of dx/dt = v(x). Within
/// node_guard of a density node the independent variable switches to
/// position (dt = dx/v stays regular there).
TrajectoryPath integrate_ode(const VelocityField& field, double x0,
                             double t_final, BoundaryPolicy policy,
                             const OdeControls& controls = {});

/// Time for the continuity flow to reach x = L: (1 - F(x0)) / c.
double transit_time(const DensityProfile& profile, double c, double x0);

}  // namespace wgflow

#endif
