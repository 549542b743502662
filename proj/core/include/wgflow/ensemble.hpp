#ifndef WGFLOW_ENSEMBLE_HPP
#define WGFLOW_ENSEMBLE_HPP

#include <cstdint>
#include <vector>

#include "wgflow/density.hpp"
#include "wgflow/trajectory.hpp"

namespace wgflow {

/// Seeded, reproducible collection of particle positions. Identical
/// (seed, params, operations) yield bit-identical positions.
struct Ensemble {
  std::vector<double> positions;
  std::uint64_t seed = 0;
  std::uint32_t generation = 0;   // propagation steps applied
  std::size_t absorbed = 0;       // cumulative members removed at a boundary

  std::size_t size() const { return positions.size(); }
};

enum class SamplingMode {
  MonteCarlo,  // seeded pseudo-random variates (default)
  Stratified   // quantiles (i - 0.5)/n, for low-variance density comparisons
};

/// Inverse-CDF sampling of n positions from rho. The random source is
/// mt19937_64 with 53-bit uniform mapping, bit-reproducible across platforms.
Ensemble sample_initial(const DensityProfile& profile, std::size_t n,
                        std::uint64_t seed,
                        SamplingMode mode = SamplingMode::MonteCarlo);

/// Applies the exact continuity flow x -> F^{-1}(F(x) + c dt) to every
/// member. Periodic keeps the count; Absorb removes exited members and
/// accounts for them in `absorbed`.
Ensemble propagate(const Ensemble& ensemble, const DensityProfile& profile,
                   double c, double dt, BoundaryPolicy policy);

/// Constant-velocity drift x -> x + v dt (the phase-gradient flow for the
/// analytic wavefunctions), with the same boundary handling.
Ensemble propagate_constant(const Ensemble& ensemble, double velocity,
                            double length, double dt, BoundaryPolicy policy);

struct GoodnessOfFit {
  double ks_statistic = 0.0;  // in [0, 1]
  std::size_t n = 0;
  double threshold = 0.0;  // critical value at significance alpha
  bool passed = false;     // ks_statistic < threshold
};

/// Sup-norm distance between the empirical CDF and F, with the asymptotic
/// critical value c(alpha)/sqrt(n); c(0.01) = 1.63, c(0.05) = 1.36.
GoodnessOfFit ks_distance(const Ensemble& ensemble,
                          const DensityProfile& profile, double alpha = 0.01);

struct HistogramBin {
  double center;
  double density;
};

/// Area-normalized histogram over [0, L].
std::vector<HistogramBin> histogram(const Ensemble& ensemble, double length,
                                    std::size_t bins);

}  // namespace wgflow

#endif
