#ifndef WGFLOW_PARAMS_HPP
#define WGFLOW_PARAMS_HPP

#include <complex>
#include <numbers>

#include "wgflow/errors.hpp"

namespace wgflow {

enum class WaveguideKind { Main, Auxiliary };

/// Relative complex phase between the two guide amplitudes.
/// Uniform: psi_a carries the same (real) amplitude as psi_m.
/// QuadraturePhase: psi_a carries an extra factor of i, which makes the
/// coupling constant real.
enum class AmplitudeConvention { Uniform, QuadraturePhase };

/// Physical constants and geometry of the two coupled waveguides.
/// Natural units (hbar = m = 1) by default; all formulas keep hbar and m
/// symbolic so SI-like values work too.
struct SystemParams {
  double hbar = 1.0;
  double mass = 1.0;
  double length = 1.0;  // waveguide extent [0, L]
  double k1 = 2.0 * std::numbers::pi;
  double k2 = 4.0 * std::numbers::pi;
  double v0 = 0.0;
  std::complex<double> j0{0.0, 0.0};
  double energy = 0.0;
  // true when (j0, energy) were produced by solve_dispersion rather than
  // supplied by the user
  bool dispersion_solved = false;

  void validate() const {
    if (!(hbar > 0.0)) throw invalid_parameter("hbar must be positive");
    if (!(mass > 0.0)) throw invalid_parameter("mass must be positive");
    if (!(length > 0.0)) throw invalid_parameter("length must be positive");
    if (!std::isfinite(k1) || !std::isfinite(k2))
      throw invalid_parameter("k1 and k2 must be finite real numbers");
    if (!std::isfinite(v0)) throw invalid_parameter("v0 must be finite");
  }

  void require_in_domain(double x) const {
    if (!(x >= 0.0 && x <= length))
      throw domain_error("position outside [0, L]");
  }
};

}  // namespace wgflow

#endif
