// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Invoked with the path to the wgflow CLI binary as argv[1]
// (used by the interface-contract criterion).
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wgflow/wgflow.hpp"

using namespace wgflow;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const char* title, bool ok,
            const std::string& detail) {
  std::printf("%s  criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", criterion,
              title, detail.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* format, ...) {
  char buf[256];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

SystemParams canonical() {
  SystemParams p;
  p.k1 = 2.0 * pi;
  p.k2 = 4.0 * pi;
  return p;
}

std::vector<double> uniform_grid(double length, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = length * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

// midpoints of a uniform partition: never lands on the density nodes of
// cos^2(2 pi x) (0.25, 0.75) and stays clear of the domain edges
std::vector<double> offnode_grid(double length, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = length * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  return g;
}

// --- criterion 1: dispersion consistency -----------------------------------

void criterion_dispersion() {
  auto p = canonical();
  const auto r = solve_dispersion(p);
  const double j0_ref = -8.0 * pi * pi;
  const double e_ref = 18.0 * pi * pi;
  const double j0_err = std::abs(r.j0 - std::complex<double>(j0_ref, 0.0)) /
                        std::abs(j0_ref);
  const double e_err = std::abs(r.energy - e_ref) / e_ref;
  p.j0 = r.j0;
  p.energy = r.energy;
  const double residual = coupled_residual(p, uniform_grid(p.length, 10000));
  const bool ok = j0_err < 1e-10 && e_err < 1e-10 && residual < 1e-10;
  report(1, "dispersion consistency", ok,
         fmt("|J0 + 8pi^2|/8pi^2 = %.3g, |E - 18pi^2|/18pi^2 = %.3g, "
             "coupled residual = %.3g over 10^4 points",
             j0_err, e_err, residual));
}

// --- criterion 2: continuity identity ---------------------------------------

void criterion_continuity() {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  const double c = fit_flux_constant(profile, wf);

  // rho * v_continuity constant to 1e-14 relative at 10^4 off-node points
  const auto off = offnode_grid(p.length, 10000);
  double worst_flux = 0.0;
  for (const double x : off) {
    const double product = profile(x) * continuity_velocity(profile, c, x);
    worst_flux = std::max(worst_flux, std::abs(product - c) / std::abs(c));
  }

  // central-difference residual of the continuity field at h = 1e-4
  const auto field = VelocityField::continuity(profile, c);
  std::vector<double> interior;
  for (const double x : off)
    if (x > 2e-4 && x < p.length - 2e-4) interior.push_back(x);
  const double cd = continuity_residual(field, profile, interior,
                                        ResidualScheme::CentralDifference,
                                        1e-4);

  // analytic residual of the phase-gradient field: strictly positive, with
  // maximum (hbar k2 / m) * max|rho'| -- here 4 pi * 4 pi = 16 pi^2
  const auto phase = VelocityField::phase_gradient(wf);
  const auto uni = uniform_grid(p.length, 10001);  // includes x = 1/8
  const double analytic =
      continuity_residual(phase, profile, uni, ResidualScheme::Analytic);
  const double analytic_ref = (p.hbar * p.k2 / p.mass) * profile.norm() * p.k1;
  const double analytic_err = std::abs(analytic - analytic_ref);

  const bool ok = worst_flux < 1e-14 && cd < 1e-6 && analytic > 0.0 &&
                  analytic_err < 1e-8;
  report(2, "continuity identity", ok,
         fmt("max rel flux deviation = %.3g, central-diff residual = %.3g, "
             "phase-field analytic residual = %.10g (expected %.10g)",
             worst_flux, cd, analytic, analytic_ref));
}

// --- criterion 3: average matching and constant-density reduction ----------

void criterion_average() {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  const double c = fit_flux_constant(profile, wf);
  const auto cont = VelocityField::continuity(profile, c);
  const auto phase = VelocityField::phase_gradient(wf);
  const double target = p.hbar * p.k2 / p.mass;  // 4 pi
  const double avg_cont = average_velocity(profile, cont);
  const double avg_phase = average_velocity(profile, phase);

  // uniform density: k1 = 0 collapses the main profile to rho = 1/L
  auto q = canonical();
  q.k1 = 0.0;
  const DensityProfile flat(q, WaveguideKind::Main);
  const auto wf0 = make_wavefunction(q, WaveguideKind::Main, true);
  const double c0 = fit_flux_constant(flat, wf0);
  const auto cont0 = VelocityField::continuity(flat, c0);
  const auto phase0 = VelocityField::phase_gradient(wf0);
  double worst_pointwise = 0.0;
  for (const double x : offnode_grid(q.length, 2000))
    worst_pointwise =
        std::max(worst_pointwise, std::abs(cont0(x) - phase0(x)));

  const bool ok = std::abs(avg_cont - target) < 1e-9 &&
                  std::abs(avg_phase - target) < 1e-9 &&
                  worst_pointwise < 1e-12;
  report(3, "average matching and constant-density reduction", ok,
         fmt("|<v_cont> - 4pi| = %.3g, |<v_phase> - 4pi| = %.3g, "
             "uniform-density pointwise gap = %.3g",
             std::abs(avg_cont - target), std::abs(avg_phase - target),
             worst_pointwise));
}

// --- criterion 4: transit-time universality ---------------------------------

void criterion_transit() {
  double worst_transit = 0.0;
  for (const double mult : {1.0, 2.0, 3.0, 5.0}) {
    auto p = canonical();
    p.k1 = mult * pi;
    const DensityProfile profile(p, WaveguideKind::Main);
    const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
    const double c = fit_flux_constant(profile, wf);
    worst_transit = std::max(
        worst_transit,
        std::abs(transit_time(profile, c, 0.0) - 1.0 / (4.0 * pi)));
  }

  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  const double c = fit_flux_constant(profile, wf);
  const auto field = VelocityField::continuity(profile, c);
  std::mt19937_64 rng(7071);
  auto uni = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  double worst_ode = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double x0 = uni();
    const double t = 0.12 * uni();  // long enough to cross density nodes
    const auto ode = integrate_ode(field, x0, t, BoundaryPolicy::Periodic);
    const auto ana =
        integrate_analytic(profile, c, x0, t, BoundaryPolicy::Periodic);
    worst_ode = std::max(
        worst_ode, std::abs(ode.final_position() - ana.final_position()));
  }

  const bool ok = worst_transit < 1e-12 && worst_ode < 1e-6;
  report(4, "transit-time universality", ok,
         fmt("max |T - 1/(4pi)| over k1 in {pi,2pi,3pi,5pi} = %.3g, "
             "max ODE-vs-analytic gap over 100 random runs = %.3g",
             worst_transit, worst_ode));
}

// --- criterion 5: equivariance of the conserved flow ------------------------

void criterion_equivariance() {
  const auto p = canonical();
  const DensityProfile profile(p, WaveguideKind::Main);
  const auto wf = make_wavefunction(p, WaveguideKind::Main, true);
  const double c = fit_flux_constant(profile, wf);
  const double v_phase = p.hbar * p.k2 / p.mass;
  const double dt_phase = 0.25 * p.mass * p.length / (p.hbar * p.k2);

  const std::uint64_t seeds[5] = {101, 202, 303, 404, 505};
  int cont_passes = 0;
  int phase_failures = 0;
  for (const std::uint64_t seed : seeds) {
    const auto initial = sample_initial(profile, 100000, seed);
    const auto moved =
        propagate(initial, profile, c, 0.05, BoundaryPolicy::Periodic);
    if (ks_distance(moved, profile).passed) ++cont_passes;
    const auto shifted = propagate_constant(initial, v_phase, p.length,
                                            dt_phase, BoundaryPolicy::Periodic);
    if (!ks_distance(shifted, profile).passed) ++phase_failures;
  }

  const bool ok = cont_passes >= 4 && phase_failures == 5;
  report(5, "equivariance of the conserved flow", ok,
         fmt("continuity flow kept the density for %d/5 seeds (need >= 4); "
             "constant drift broke it for %d/5 seeds (need 5)",
             cont_passes, phase_failures));
}

// --- criterion 6: determinism and interface contract ------------------------

std::string g_cli;
fs::path g_tmp;

int run_cli(const std::string& args) {
  const std::string cmd =
      g_cli + " " + args + " > /dev/null 2> /dev/null";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_interface() {
  g_tmp = fs::temp_directory_path() / "wgflow_acceptance";
  fs::create_directories(g_tmp);

  const fs::path a = g_tmp / "a.csv";
  const fs::path b = g_tmp / "b.csv";
  const std::string ens =
      " --seed 31 --boundary periodic ensemble --n 20000 --dt 0.05";
  bool identical = run_cli("--out " + a.string() + ens) == 0 &&
                   run_cli("--out " + b.string() + ens) == 0 &&
                   !slurp(a).empty() && slurp(a) == slurp(b);
  const std::string vel = " velocity --samples 257";
  identical = identical && run_cli("--out " + a.string() + vel) == 0 &&
              run_cli("--out " + b.string() + vel) == 0 &&
              slurp(a) == slurp(b);

  const int rc_ok = run_cli("dispersion");
  const fs::path bad_cfg = g_tmp / "bad.json";
  std::ofstream(bad_cfg) << R"({"no_such_key": 1})";
  const int rc_usage = run_cli("--config " + bad_cfg.string() + " dispersion");
  const int rc_verify_fail = run_cli("--convention uniform dispersion");
  const bool codes = rc_ok == 0 && rc_usage == 1 && rc_verify_fail == 2;

  fs::remove_all(g_tmp);
  const bool ok = identical && codes;
  report(6, "determinism and interface contract", ok,
         fmt("byte-identical reruns: %s; exit codes (success/usage/"
             "verification) = %d/%d/%d (expected 0/1/2)",
             identical ? "yes" : "no", rc_ok, rc_usage, rc_verify_fail));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance_test <path-to-wgflow-binary>\n");
    return 1;
  }
  g_cli = argv[1];

  criterion_dispersion();
  criterion_continuity();
  criterion_average();
  criterion_transit();
  criterion_equivariance();
  criterion_interface();

  if (g_failures == 0)
    std::printf("all 6 acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
