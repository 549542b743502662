#include <benchmark/benchmark.h>

#include <numbers>

#include "wgflow/wgflow.hpp"

using namespace wgflow;
using std::numbers::pi;

namespace {

SystemParams canonical() {
  SystemParams p;
  p.k1 = 2.0 * pi;
  p.k2 = 4.0 * pi;
  return p;
}

void BM_PhaseGradientVelocity(benchmark::State& state) {
  const auto p = canonical();
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(phase_gradient_velocity(wf, x));
    x += 1e-4;
    if (x > p.length) x = 0.0;
  }
}
BENCHMARK(BM_PhaseGradientVelocity);

void BM_InverseCdf(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  double u = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(profile.inverse_cdf(u));
    u += 1e-4;
    if (u > 1.0) u = 0.0;
  }
}
BENCHMARK(BM_InverseCdf);

void BM_FitFluxConstant(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  for (auto _ : state)
    benchmark::DoNotOptimize(fit_flux_constant(profile, wf));
}
BENCHMARK(BM_FitFluxConstant);

void BM_IntegrateAnalytic(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const double c = 4.0 * pi;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_analytic(profile, c, 0.1, 0.05,
                                                BoundaryPolicy::Periodic));
}
BENCHMARK(BM_IntegrateAnalytic);

void BM_IntegrateOde(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  const double c = fit_flux_constant(profile, wf);
  const auto field = VelocityField::continuity(profile, c);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_ode(field, 0.1, 0.05, BoundaryPolicy::Periodic));
}
BENCHMARK(BM_IntegrateOde);

void BM_Propagate(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto initial =
      sample_initial(profile, static_cast<std::size_t>(state.range(0)), 17);
  const double c = 4.0 * pi;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        propagate(initial, profile, c, 0.05, BoundaryPolicy::Periodic));
}
BENCHMARK(BM_Propagate)->Arg(1000)->Arg(100000);

void BM_KsDistance(benchmark::State& state) {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto ensemble = sample_initial(profile, 100000, 17);
  for (auto _ : state)
    benchmark::DoNotOptimize(ks_distance(ensemble, profile));
}
BENCHMARK(BM_KsDistance);

}  // namespace

BENCHMARK_MAIN();
