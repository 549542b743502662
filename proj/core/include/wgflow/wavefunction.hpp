#ifndef WGFLOW_WAVEFUNCTION_HPP
#define WGFLOW_WAVEFUNCTION_HPP

#include <complex>

#include "wgflow/params.hpp"

namespace wgflow {

/// Normalization constant A > 0 with A^2 * integral of trig^2(k1 x) over
/// [0, L] equal to 1. Closed form; quadrature cross-checks live in the tests.
double normalization_constant(const SystemParams& params, WaveguideKind kind);

/// Analytic wavefunction of one guide:
///   Main:      amplitude * cos(k1 x) * exp(i k2 x)
///   Auxiliary: amplitude * sin(k1 x) * exp(i k2 x)
/// Derivatives up to order 2 are closed-form. Immutable after construction.
class WaveFunction {
 public:
  WaveFunction(const SystemParams& params, WaveguideKind kind,
               std::complex<double> amplitude);

  /// psi, psi' or psi'' at x in [0, L]; order must be 0, 1 or 2.
  std::complex<double> evaluate(double x, int order = 0) const;
  std::complex<double> operator()(double x) const { return evaluate(x, 0); }

  WaveguideKind kind() const { return kind_; }
  std::complex<double> amplitude() const { return amplitude_; }
  const SystemParams& params() const { return params_; }

 private:
  SystemParams params_;
  WaveguideKind kind_;
  std::complex<double> amplitude_;
};

/// Builds a guide wavefunction; when normalize is set the amplitude magnitude
/// is the normalization constant (Auxiliary picks up a factor of i under the
/// quadrature-phase convention).
WaveFunction make_wavefunction(
    const SystemParams& params, WaveguideKind kind, bool normalize,
    AmplitudeConvention convention = AmplitudeConvention::QuadraturePhase);

inline std::complex<double> evaluate(const WaveFunction& wf, double x,
                                     int order) {
  return wf.evaluate(x, order);
}

}  // namespace wgflow

#endif
