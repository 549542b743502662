#ifndef WGFLOW_DENSITY_HPP
#define WGFLOW_DENSITY_HPP

#include <vector>

#include "wgflow/params.hpp"

namespace wgflow {

/// Stationary density rho(x) = A^2 trig^2(k1 x) of one guide, normalized so
/// that the integral over [0, L] is 1. Provides the closed-form cumulative
/// integral F and its inverse.
class DensityProfile {
 public:
  DensityProfile(const SystemParams& params, WaveguideKind kind);

  /// rho(x); nonnegative on [0, L]
  double operator()(double x) const;
  /// closed-form rho'(x)
  double derivative(double x) const;
  /// F(x) = integral of rho from 0 to x; F(0) = 0, F(L) = 1, nondecreasing
  double cdf(double x) const;
  /// x with |F(x) - u| < 1e-12, leftmost at plateaus; safeguarded Newton
  /// with bisection fallback
  double inverse_cdf(double u) const;

  /// zeros of rho inside [0, L], in increasing order
  std::vector<double> nodes() const;

  double norm() const { return norm_; }  // A^2, the density scale
  WaveguideKind kind() const { return kind_; }
  const SystemParams& params() const { return params_; }
  double length() const { return params_.length; }

 private:
  SystemParams params_;
  WaveguideKind kind_;
  double norm_;
};

}  // namespace wgflow

#endif
