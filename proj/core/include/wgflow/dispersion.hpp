#ifndef WGFLOW_DISPERSION_HPP
#define WGFLOW_DISPERSION_HPP

#include <complex>
#include <span>

#include "wgflow/params.hpp"
#include "wgflow/wavefunction.hpp"

namespace wgflow {

struct DispersionResult {
  std::complex<double> j0;
  double energy = 0.0;
  AmplitudeConvention convention = AmplitudeConvention::QuadraturePhase;
  /// amplitude of psi_a divided by amplitude of psi_m demanded by the
  /// coupled system (i under the quadrature-phase convention)
  std::complex<double> amplitude_ratio{0.0, 1.0};
  /// k1 == 0: the auxiliary wavefunction vanishes identically and the
  /// coupling constant is unconstrained (reported as 0)
  bool degenerate = false;
};

/// Determines (J0, E) by coefficient matching of the ansatz wavefunctions in
/// the coupled system. Under the uniform amplitude convention the two
/// equations demand contradictory couplings; that raises
/// dispersion_inconsistency carrying both candidates.
DispersionResult solve_dispersion(
    const SystemParams& params,
    AmplitudeConvention convention = AmplitudeConvention::QuadraturePhase);

/// Max over the grid and over both equations of
/// |E psi - (-(hbar^2/2m) psi'' + V0 psi + hbar J0 (psi_other - psi))|
/// with analytic second derivatives.
double coupled_residual(const WaveFunction& main, const WaveFunction& aux,
                        std::span<const double> grid);

/// Same residual with unit-magnitude amplitudes under the given convention.
double coupled_residual(
    const SystemParams& params, std::span<const double> grid,
    AmplitudeConvention convention = AmplitudeConvention::QuadraturePhase);

}  // namespace wgflow

#endif
