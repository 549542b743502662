#ifndef WGFLOW_VELOCITY_HPP
#define WGFLOW_VELOCITY_HPP

#include <memory>
#include <span>
#include <vector>

#include "wgflow/density.hpp"
#include "wgflow/wavefunction.hpp"

namespace wgflow {

/// (hbar/m) d(phase)/dx, computed as the current-over-density form
/// (hbar/m) Im(psi* psi') / |psi|^2; at a density node the removable
/// singularity is filled with the analytic limit.
double phase_gradient_velocity(const WaveFunction& wf, double x);

/// c/rho(x); at an exact node returns a signed infinity rather than a
/// finite number.
double continuity_velocity(const DensityProfile& profile, double c, double x);

/// An evaluable velocity law on [0, L], tagged by construction.
class VelocityField {
 public:
  enum class Kind { PhaseGradient, Continuity, GridDerived };

  static VelocityField phase_gradient(WaveFunction wf);
  static VelocityField continuity(DensityProfile profile, double flux_constant);
  /// Tabulated density: monotone cubic interpolation of rho, then v = c/rho.
  static VelocityField grid_derived(std::vector<double> positions,
                                    std::vector<double> densities,
                                    double flux_constant);

  /// v(x); +/-inf at exact density nodes of the continuity-type kinds
  double operator()(double x) const;
  /// rho(x) seen by this field
  double density(double x) const;
  /// rho(x) * v(x), node-safe: identically the flux constant for the
  /// continuity-type kinds, the probability current for PhaseGradient
  double flux(double x) const;
  /// closed-form d(rho v)/dx
  double flux_derivative(double x) const;

  Kind kind() const { return kind_; }
  double flux_constant() const { return flux_constant_; }
  double domain_length() const;
  std::vector<double> nodes() const;

 private:
  VelocityField() = default;
  struct Grid;  // sampled density table with monotone-cubic slopes

  Kind kind_ = Kind::Continuity;
  double flux_constant_ = 0.0;
  std::shared_ptr<const WaveFunction> wf_;
  std::shared_ptr<const DensityProfile> profile_;
  std::shared_ptr<const Grid> grid_;
};

/// c such that the mean of v = c/rho under rho equals the density-weighted
/// mean of the phase-gradient velocity (computed by quadrature).
double fit_flux_constant(const DensityProfile& profile, const WaveFunction& wf);

/// GridDerived field with c chosen so the trapezoid estimate of the mean
/// velocity equals mean_velocity_target.
VelocityField grid_velocity_from_density(std::span<const double> positions,
                                         std::span<const double> densities,
                                         double mean_velocity_target);

/// Density-weighted mean of the field over [0, L] by adaptive quadrature.
double average_velocity(const DensityProfile& profile,
                        const VelocityField& field);

enum class ResidualScheme { Analytic, CentralDifference };

/// Max |d(rho v)/dx| over the grid. The analytic scheme differentiates the
/// closed-form flux; the difference scheme applies central differences of
/// the product rho(x) v(x) with step h (default 1e-4 * L).
double continuity_residual(const VelocityField& field,
                           const DensityProfile& profile,
                           std::span<const double> grid, ResidualScheme scheme,
                           double h = -1.0);

}  // namespace wgflow

#endif
