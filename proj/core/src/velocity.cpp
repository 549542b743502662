#include "wgflow/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wgflow/quadrature.hpp"

namespace wgflow {

double phase_gradient_velocity(const WaveFunction& wf, double x) {
  const double scale = wf.params().hbar / wf.params().mass;
  const auto psi = wf.evaluate(x, 0);
  const auto dpsi = wf.evaluate(x, 1);
  const double den = std::norm(psi);
  if (den > 1e-300) return scale * std::imag(std::conj(psi) * dpsi) / den;

  // removable singularity at a simple node: with psi ~ psi'(x0) (x - x0),
  // Im(psi* psi')/|psi|^2 -> Im(psi'* psi'')/(2 |psi'|^2)
  const double den1 = std::norm(dpsi);
  if (den1 <= 1e-300)
    throw node_singularity(
        "phase-gradient velocity has no limit at a higher-order node");
  const auto d2psi = wf.evaluate(x, 2);
  return scale * 0.5 * std::imag(std::conj(dpsi) * d2psi) / den1;
}

double continuity_velocity(const DensityProfile& profile, double c, double x) {
  const double rho = profile(x);
  if (rho > 0.0) return c / rho;
  if (c == 0.0) return 0.0;
  return std::copysign(std::numeric_limits<double>::infinity(), c);
}

// ---------------------------------------------------------------------------
// sampled density table

struct VelocityField::Grid {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> slope;  // Fritsch-Carlson monotone-limited derivatives

  double interp(double at) const {
    if (!(at >= x.front() && at <= x.back()))
      throw domain_error("position outside the tabulated domain");
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    const std::size_t i =
        it == x.begin() ? 0 : std::min<std::size_t>(it - x.begin() - 1,
                                                    x.size() - 2);
    const double hx = x[i + 1] - x[i];
    const double t = (at - x[i]) / hx;
    const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
    const double h10 = t * (1.0 - t) * (1.0 - t);
    const double h01 = t * t * (3.0 - 2.0 * t);
    const double h11 = t * t * (t - 1.0);
    const double v = h00 * rho[i] + h10 * hx * slope[i] + h01 * rho[i + 1] +
                     h11 * hx * slope[i + 1];
    return std::max(v, 0.0);
  }
};

namespace {

std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n - 1), m(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  if (n == 2) return {d[0], d[0]};
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  // clamp the endpoint slopes so the interpolant stays within data bounds
  for (std::size_t i : {std::size_t{0}, n - 1}) {
    const double dd = i == 0 ? d[0] : d[n - 2];
    if (dd == 0.0)
      m[i] = 0.0;
    else if (m[i] / dd < 0.0)
      m[i] = 0.0;
    else if (std::abs(m[i]) > 3.0 * std::abs(dd))
      m[i] = 3.0 * dd;
  }
  return m;
}

}  // namespace

VelocityField VelocityField::phase_gradient(WaveFunction wf) {
  VelocityField f;
  f.kind_ = Kind::PhaseGradient;
  f.wf_ = std::make_shared<WaveFunction>(std::move(wf));
  return f;
}

VelocityField VelocityField::continuity(DensityProfile profile,
                                        double flux_constant) {
  VelocityField f;
  f.kind_ = Kind::Continuity;
  f.flux_constant_ = flux_constant;
  f.profile_ = std::make_shared<DensityProfile>(std::move(profile));
  return f;
}

VelocityField VelocityField::grid_derived(std::vector<double> positions,
                                          std::vector<double> densities,
                                          double flux_constant) {
  if (positions.size() < 2)
    throw invalid_parameter("grid field needs at least 2 samples");
  if (positions.size() != densities.size())
    throw invalid_parameter("positions and densities differ in length");
  for (std::size_t i = 0; i + 1 < positions.size(); ++i)
    if (!(positions[i] < positions[i + 1]))
      throw invalid_parameter("positions must be strictly increasing");
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
    if (densities[i] < 0.0 || densities[i + 1] < 0.0)
      throw invalid_parameter("densities must be nonnegative");
    integral += 0.5 * (densities[i] + densities[i + 1]) *
                (positions[i + 1] - positions[i]);
  }
  if (std::abs(integral - 1.0) > 1e-6)
    throw invalid_parameter("tabulated density is not normalized");

  auto grid = std::make_shared<Grid>();
  grid->slope = pchip_slopes(positions, densities);
  grid->x = std::move(positions);
  grid->rho = std::move(densities);

  VelocityField f;
  f.kind_ = Kind::GridDerived;
  f.flux_constant_ = flux_constant;
  f.grid_ = std::move(grid);
  return f;
}

double VelocityField::density(double x) const {
  switch (kind_) {
    case Kind::PhaseGradient: return std::norm(wf_->evaluate(x, 0));
    case Kind::Continuity: return (*profile_)(x);
    default: return grid_->interp(x);
  }
}

double VelocityField::operator()(double x) const {
  switch (kind_) {
    case Kind::PhaseGradient: return phase_gradient_velocity(*wf_, x);
    case Kind::Continuity: return continuity_velocity(*profile_, flux_constant_, x);
    default: {
      const double rho = grid_->interp(x);
      if (rho > 0.0) return flux_constant_ / rho;
      if (flux_constant_ == 0.0) return 0.0;
      return std::copysign(std::numeric_limits<double>::infinity(),
                           flux_constant_);
    }
  }
}

double VelocityField::flux(double x) const {
  if (kind_ == Kind::PhaseGradient) {
    const auto& wf = *wf_;
    return wf.params().hbar / wf.params().mass *
           std::imag(std::conj(wf.evaluate(x, 0)) * wf.evaluate(x, 1));
  }
  density(x);  // domain check
  return flux_constant_;
}

double VelocityField::flux_derivative(double x) const {
  if (kind_ != Kind::PhaseGradient) {
    density(x);  // domain check; flux is the constant c by construction
    return 0.0;
  }
  // d(rho v)/dx = (hbar/m) d Im(psi* psi')/dx = (hbar/m) Im(psi* psi'')
  const auto& wf = *wf_;
  return wf.params().hbar / wf.params().mass *
         std::imag(std::conj(wf.evaluate(x, 0)) * wf.evaluate(x, 2));
}

double VelocityField::domain_length() const {
  switch (kind_) {
    case Kind::PhaseGradient: return wf_->params().length;
    case Kind::Continuity: return profile_->length();
    default: return grid_->x.back();
  }
}

std::vector<double> VelocityField::nodes() const {
  switch (kind_) {
    case Kind::PhaseGradient: return {};  // the velocity stays finite
    case Kind::Continuity: return profile_->nodes();
    default: {
      std::vector<double> out;
      for (std::size_t i = 0; i < grid_->x.size(); ++i)
        if (grid_->rho[i] == 0.0) out.push_back(grid_->x[i]);
      return out;
    }
  }
}

// ---------------------------------------------------------------------------

double fit_flux_constant(const DensityProfile& profile,
                         const WaveFunction& wf) {
  const double L = profile.length();
  const double check = profile.cdf(L);
  if (std::abs(check - 1.0) > 1e-9)
    throw invalid_parameter("density profile is not normalized over [0, L]");
  const double mean = integrate(
      [&](double x) { return profile(x) * phase_gradient_velocity(wf, x); },
      0.0, L);
  return mean / L;
}

VelocityField grid_velocity_from_density(std::span<const double> positions,
                                         std::span<const double> densities,
                                         double mean_velocity_target) {
  if (positions.size() < 2)
    throw invalid_parameter("grid field needs at least 2 samples");
  // rho * v is the constant c at every sample, so the trapezoid estimate of
  // the mean velocity is c * span
  const double span = positions.back() - positions.front();
  const double c = mean_velocity_target / span;
  return VelocityField::grid_derived(
      std::vector<double>(positions.begin(), positions.end()),
      std::vector<double>(densities.begin(), densities.end()), c);
}

double average_velocity(const DensityProfile& profile,
                        const VelocityField& field) {
  const double L = profile.length();
  if (std::abs(field.domain_length() - L) > 1e-12 * std::max(1.0, L))
    throw invalid_parameter("field and profile domains differ");
  return integrate([&](double x) { return field.flux(x); }, 0.0, L, 1e-11);
}

double continuity_residual(const VelocityField& field,
                           const DensityProfile& profile,
                           std::span<const double> grid, ResidualScheme scheme,
                           double h) {
  double worst = 0.0;
  if (scheme == ResidualScheme::Analytic) {
    for (double x : grid)
      worst = std::max(worst, std::abs(field.flux_derivative(x)));
    return worst;
  }
  const double L = profile.length();
  if (h <= 0.0) h = 1e-4 * L;
  for (double x : grid) {
    if (!(x - h >= 0.0 && x + h <= L))
      throw domain_error("difference stencil leaves [0, L]");
    const double gp = profile(x + h) * field(x + h);
    const double gm = profile(x - h) * field(x - h);
    worst = std::max(worst, std::abs(gp - gm) / (2.0 * h));
  }
  return worst;
}

}  // namespace wgflow
