#include "wgflow/wavefunction.hpp"

#include <cmath>

namespace wgflow {

namespace {

// integral over [0, L] of cos^2(k1 x) (Main) or sin^2(k1 x) (Auxiliary)
double trig_square_integral(const SystemParams& p, WaveguideKind kind) {
  const double L = p.length;
  if (p.k1 == 0.0) return kind == WaveguideKind::Main ? L : 0.0;
  const double osc = std::sin(2.0 * p.k1 * L) / (4.0 * p.k1);
  return kind == WaveguideKind::Main ? L / 2.0 + osc : L / 2.0 - osc;
}

}  // namespace

double normalization_constant(const SystemParams& params, WaveguideKind kind) {
  params.validate();
  const double integral = trig_square_integral(params, kind);
  if (!(integral > 0.0))
    throw degenerate_density(
        "density integral vanishes; guide carries no probability");
  return 1.0 / std::sqrt(integral);
}

WaveFunction::WaveFunction(const SystemParams& params, WaveguideKind kind,
                           std::complex<double> amplitude)
    : params_(params), kind_(kind), amplitude_(amplitude) {
  params_.validate();
}

std::complex<double> WaveFunction::evaluate(double x, int order) const {
  params_.require_in_domain(x);
  if (order < 0 || order > 2)
    throw invalid_parameter("derivative order must be 0, 1 or 2");

  const double k1 = params_.k1;
  const double k2 = params_.k2;
  const std::complex<double> phase{std::cos(k2 * x), std::sin(k2 * x)};
  const double c = std::cos(k1 * x);
  const double s = std::sin(k1 * x);
  const std::complex<double> i{0.0, 1.0};

  std::complex<double> envelope;
  if (kind_ == WaveguideKind::Main) {
    switch (order) {
      case 0: envelope = c; break;
      case 1: envelope = -k1 * s + i * k2 * c; break;
      default: envelope = -(k1 * k1 + k2 * k2) * c - i * (2.0 * k1 * k2) * s;
    }
  } else {
    switch (order) {
      case 0: envelope = s; break;
      case 1: envelope = k1 * c + i * k2 * s; break;
      default: envelope = -(k1 * k1 + k2 * k2) * s + i * (2.0 * k1 * k2) * c;
    }
  }
  return amplitude_ * envelope * phase;
}

WaveFunction make_wavefunction(const SystemParams& params, WaveguideKind kind,
                               bool normalize,
                               AmplitudeConvention convention) {
  params.validate();
  std::complex<double> amplitude{1.0, 0.0};
  if (normalize) amplitude = normalization_constant(params, kind);
  if (kind == WaveguideKind::Auxiliary &&
      convention == AmplitudeConvention::QuadraturePhase)
    amplitude *= std::complex<double>{0.0, 1.0};
  return WaveFunction(params, kind, amplitude);
}

}  // namespace wgflow
