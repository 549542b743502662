#include "wgflow/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace wgflow {

namespace {

// 53-bit mantissa mapping; uniform_real_distribution is not portable
double uniform53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

Ensemble sample_initial(const DensityProfile& profile, std::size_t n,
                        std::uint64_t seed, SamplingMode mode) {
  if (n < 1) throw invalid_parameter("ensemble needs at least one member");
  Ensemble e;
  e.seed = seed;
  e.positions.reserve(n);
  if (mode == SamplingMode::Stratified) {
    for (std::size_t i = 0; i < n; ++i) {
      const double u = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
      e.positions.push_back(profile.inverse_cdf(u));
    }
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i)
      e.positions.push_back(profile.inverse_cdf(uniform53(rng)));
  }
  return e;
}

Ensemble propagate(const Ensemble& ensemble, const DensityProfile& profile,
                   double c, double dt, BoundaryPolicy policy) {
  Ensemble out;
  out.seed = ensemble.seed;
  out.generation = ensemble.generation + 1;
  out.absorbed = ensemble.absorbed;
  out.positions.reserve(ensemble.positions.size());
  for (double x : ensemble.positions) {
    const TrajectoryPath path =
        integrate_analytic(profile, c, x, dt, policy, 2);
    if (path.terminal == TrajectoryPath::Terminal::Absorbed) {
      ++out.absorbed;
      continue;
    }
    out.positions.push_back(path.final_position());
  }
  return out;
}

Ensemble propagate_constant(const Ensemble& ensemble, double velocity,
                            double length, double dt, BoundaryPolicy policy) {
  Ensemble out;
  out.seed = ensemble.seed;
  out.generation = ensemble.generation + 1;
  out.absorbed = ensemble.absorbed;
  out.positions.reserve(ensemble.positions.size());
  for (double x : ensemble.positions) {
    double xn = x + velocity * dt;
    if (policy == BoundaryPolicy::Periodic) {
      xn -= length * std::floor(xn / length);
    } else if (xn > length || xn < 0.0) {
      ++out.absorbed;
      continue;
    }
    out.positions.push_back(xn);
  }
  return out;
}

GoodnessOfFit ks_distance(const Ensemble& ensemble,
                          const DensityProfile& profile, double alpha) {
  const std::size_t n = ensemble.size();
  if (n == 0) throw invalid_parameter("empty ensemble");
  if (n < 10) throw invalid_parameter("KS test needs at least 10 members");

  std::vector<double> sorted(ensemble.positions);
  std::sort(sorted.begin(), sorted.end());
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = profile.cdf(sorted[i]);
    const double di = static_cast<double>(i);
    d = std::max(d, std::max(f - di / dn, (di + 1.0) / dn - f));
  }

  double calpha;
  if (alpha == 0.01)
    calpha = 1.63;
  else if (alpha == 0.05)
    calpha = 1.36;
  else
    calpha = std::sqrt(-0.5 * std::log(alpha / 2.0));

  GoodnessOfFit fit;
  fit.ks_statistic = d;
  fit.n = n;
  fit.threshold = calpha / std::sqrt(dn);
  fit.passed = d < fit.threshold;
  return fit;
}

std::vector<HistogramBin> histogram(const Ensemble& ensemble, double length,
                                    std::size_t bins) {
  if (ensemble.size() == 0) throw invalid_parameter("empty ensemble");
  if (bins < 2) throw invalid_parameter("need at least 2 bins");
  std::vector<std::size_t> counts(bins, 0);
  const double width = length / static_cast<double>(bins);
  for (double x : ensemble.positions) {
    auto b = static_cast<std::size_t>(x / width);
    if (b >= bins) b = bins - 1;  // x == L lands in the last bin
    ++counts[b];
  }
  std::vector<HistogramBin> out(bins);
  const double scale = 1.0 / (static_cast<double>(ensemble.size()) * width);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].center = (static_cast<double>(b) + 0.5) * width;
    out[b].density = static_cast<double>(counts[b]) * scale;
  }
  return out;
}

}  // namespace wgflow
