#include "wgflow/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wgflow/wavefunction.hpp"

namespace wgflow {

DensityProfile::DensityProfile(const SystemParams& params, WaveguideKind kind)
    : params_(params), kind_(kind), norm_(0.0) {
  const double a = normalization_constant(params_, kind_);
  norm_ = a * a;
}

double DensityProfile::operator()(double x) const {
  params_.require_in_domain(x);
  const double t = kind_ == WaveguideKind::Main ? std::cos(params_.k1 * x)
                                                : std::sin(params_.k1 * x);
  return norm_ * t * t;
}

double DensityProfile::derivative(double x) const {
  params_.require_in_domain(x);
  const double s = std::sin(2.0 * params_.k1 * x);
  return kind_ == WaveguideKind::Main ? -norm_ * params_.k1 * s
                                      : norm_ * params_.k1 * s;
}

double DensityProfile::cdf(double x) const {
  params_.require_in_domain(x);
  if (x == params_.length) return 1.0;  // normalization, exact at the edge
  const double k1 = params_.k1;
  double value;
  if (k1 == 0.0) {
    value = norm_ * x;  // Main only; Auxiliary is rejected at construction
  } else {
    const double osc = std::sin(2.0 * k1 * x) / (4.0 * k1);
    value = norm_ * (kind_ == WaveguideKind::Main ? x / 2.0 + osc
                                                  : x / 2.0 - osc);
  }
  return std::clamp(value, 0.0, 1.0);
}

double DensityProfile::inverse_cdf(double u) const {
  if (!(u >= 0.0 && u <= 1.0))
    throw domain_error("probability outside [0, 1]");
  const double L = params_.length;
  if (u == 0.0) return 0.0;
  if (u == 1.0) return L;

  // Safeguarded Newton on F(x) = u, run to the rounding floor; F is
  // nondecreasing, so the bracket [lo, hi] with F(lo) < u <= F(hi) always
  // survives. Returning hi gives the leftmost solution at near-flat
  // stretches (density nodes).
  double lo = 0.0, hi = L;
  double x = u * L;
  for (int iter = 0; iter < 300; ++iter) {
    const double f = cdf(x) - u;
    if (f >= 0.0)
      hi = x;
    else
      lo = x;
    if (f == 0.0) return x;
    if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(hi, 0.25 * L))
      break;
    const double slope = (*this)(x);
    double next = slope > 1e-14 / L ? x - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi) || next == x) next = 0.5 * (lo + hi);
    x = next;
  }
  return hi;
}

std::vector<double> DensityProfile::nodes() const {
  std::vector<double> out;
  const double k1 = params_.k1;
  const double L = params_.length;
  if (k1 == 0.0) return out;
  const double pi = std::numbers::pi;
  const double ak1 = std::abs(k1);
  // Main: cos(k1 x) = 0 at (pi/2 + n pi)/|k1|; Auxiliary: sin = 0 at n pi/|k1|
  const double offset = kind_ == WaveguideKind::Main ? pi / 2.0 : 0.0;
  for (int n = 0;; ++n) {
    const double x = (offset + n * pi) / ak1;
    if (x > L * (1.0 + 1e-15)) break;
    out.push_back(std::min(x, L));
  }
  return out;
}

}  // namespace wgflow
