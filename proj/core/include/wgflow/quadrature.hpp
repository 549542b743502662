#ifndef WGFLOW_QUADRATURE_HPP
#define WGFLOW_QUADRATURE_HPP

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "wgflow/errors.hpp"

namespace wgflow {

/// Adaptive Gauss-Kronrod (G30/K61) quadrature over [a, b] with an absolute
/// error target. Throws numerical_error when the error estimate stays above
/// the target after full refinement.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
  if (a == b) return 0.0;
  double error = 0.0;
  using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double value =
      gk::integrate(f, a, b, 12, std::min(abs_tol, 1e-13), &error);
  const double scale = std::max(1.0, std::abs(value));
  if (!(error <= abs_tol * scale))
    throw numerical_error("quadrature did not reach requested tolerance",
                          error);
  return value;
}

}  // namespace wgflow

#endif
