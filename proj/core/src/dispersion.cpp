#include "wgflow/dispersion.hpp"

#include <algorithm>
#include <cmath>

namespace wgflow {

DispersionResult solve_dispersion(const SystemParams& params,
                                  AmplitudeConvention convention) {
  params.validate();
  const double hbar = params.hbar;
  const double m = params.mass;
  const double k1 = params.k1;
  const double k2 = params.k2;
  const std::complex<double> i{0.0, 1.0};

  DispersionResult result;
  result.convention = convention;
  result.amplitude_ratio =
      convention == AmplitudeConvention::QuadraturePhase ? i : 1.0;

  const double kinetic = hbar * hbar * (k1 * k1 + k2 * k2) / (2.0 * m);

  if (k1 == 0.0) {
    // auxiliary wavefunction identically zero; J0 drops out of both equations
    result.degenerate = true;
    result.j0 = 0.0;
    result.energy = kinetic + params.v0;
    return result;
  }

  if (k2 == 0.0) {
    // decoupled standing waves
    result.j0 = 0.0;
    result.energy = kinetic + params.v0;
    return result;
  }

  // Matching the sin coefficient of the main equation and the cos
  // coefficient of the auxiliary equation, with amplitude ratio r:
  //   J0 = -i hbar k1 k2 / (m r)   and   J0 = i hbar k1 k2 r / m
  const std::complex<double> r = result.amplitude_ratio;
  const double kk = hbar * k1 * k2 / m;
  const std::complex<double> j0_main = -i * kk / r;
  const std::complex<double> j0_aux = i * kk * r;
  if (std::abs(j0_main - j0_aux) > 1e-12 * std::abs(j0_main))
    throw dispersion_inconsistency(
        "the two coupled equations demand contradictory couplings under this "
        "amplitude convention",
        j0_main, j0_aux);

  result.j0 = j0_main;
  // cos coefficient of the main equation: E = kinetic + V0 - hbar J0
  result.energy = kinetic + params.v0 - hbar * j0_main.real();
  return result;
}

double coupled_residual(const WaveFunction& main, const WaveFunction& aux,
                        std::span<const double> grid) {
  const SystemParams& p = main.params();
  const double kin = p.hbar * p.hbar / (2.0 * p.mass);
  double worst = 0.0;
  for (double x : grid) {
    const auto psi_m = main.evaluate(x, 0);
    const auto psi_a = aux.evaluate(x, 0);
    const auto rhs_m = -kin * main.evaluate(x, 2) + p.v0 * psi_m +
                       p.hbar * p.j0 * (psi_a - psi_m);
    const auto rhs_a = -kin * aux.evaluate(x, 2) + p.v0 * psi_a +
                       p.hbar * p.j0 * (psi_m - psi_a);
    worst = std::max(worst, std::abs(p.energy * psi_m - rhs_m));
    worst = std::max(worst, std::abs(p.energy * psi_a - rhs_a));
  }
  return worst;
}

double coupled_residual(const SystemParams& params,
                        std::span<const double> grid,
                        AmplitudeConvention convention) {
  std::complex<double> aux_amp{1.0, 0.0};
  if (convention == AmplitudeConvention::QuadraturePhase)
    aux_amp = std::complex<double>{0.0, 1.0};
  WaveFunction main(params, WaveguideKind::Main, 1.0);
  WaveFunction aux(params, WaveguideKind::Auxiliary, aux_amp);
  return coupled_residual(main, aux, grid);
}

}  // namespace wgflow
