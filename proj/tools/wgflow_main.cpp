// wgflow: command-line front end for the coupled-waveguide Bohmian flow
// simulator. Subcommands: dispersion, velocity, trajectory, ensemble, verify.
// Exit codes: 0 success, 1 usage/config/input error, 2 verification failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "wgflow/wgflow.hpp"
#include "wgflow/io.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct Tolerances {
  double quadrature = 1e-12;
  double ode_rel = 1e-9;
  double ode_abs = 1e-12;
  double residual = 1e-10;
};

struct RunConfig {
  wgflow::SystemParams params;  // defaults: hbar=m=1, L=1, V0=0, k1=2pi, k2=4pi
  wgflow::WaveguideKind guide = wgflow::WaveguideKind::Main;
  wgflow::AmplitudeConvention convention =
      wgflow::AmplitudeConvention::QuadraturePhase;
  wgflow::BoundaryPolicy boundary = wgflow::BoundaryPolicy::Absorb;
  std::uint64_t seed = 1;
  double alpha = 0.01;
  Tolerances tol;
  bool user_dispersion = false;  // j0/energy supplied in the config
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

wgflow::WaveguideKind parse_guide(const std::string& s) {
  if (s == "main") return wgflow::WaveguideKind::Main;
  if (s == "aux") return wgflow::WaveguideKind::Auxiliary;
  throw ConfigError("guide must be 'main' or 'aux'");
}

wgflow::AmplitudeConvention parse_convention(const std::string& s) {
  if (s == "uniform") return wgflow::AmplitudeConvention::Uniform;
  if (s == "quadrature-phase")
    return wgflow::AmplitudeConvention::QuadraturePhase;
  throw ConfigError("amplitude_convention must be 'uniform' or 'quadrature-phase'");
}

wgflow::BoundaryPolicy parse_boundary(const std::string& s) {
  if (s == "absorb") return wgflow::BoundaryPolicy::Absorb;
  if (s == "periodic") return wgflow::BoundaryPolicy::Periodic;
  throw ConfigError("boundary must be 'absorb' or 'periodic'");
}

RunConfig load_config(const std::string& path) {
  RunConfig cfg;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  bool have_j0 = false, have_energy = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "hbar") cfg.params.hbar = value.get<double>();
    else if (key == "mass") cfg.params.mass = value.get<double>();
    else if (key == "length") cfg.params.length = value.get<double>();
    else if (key == "k1") cfg.params.k1 = value.get<double>();
    else if (key == "k2") cfg.params.k2 = value.get<double>();
    else if (key == "v0") cfg.params.v0 = value.get<double>();
    else if (key == "j0") { cfg.params.j0 = value.get<double>(); have_j0 = true; }
    else if (key == "energy") { cfg.params.energy = value.get<double>(); have_energy = true; }
    else if (key == "guide") cfg.guide = parse_guide(value.get<std::string>());
    else if (key == "amplitude_convention")
      cfg.convention = parse_convention(value.get<std::string>());
    else if (key == "boundary")
      cfg.boundary = parse_boundary(value.get<std::string>());
    else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
    else if (key == "alpha") cfg.alpha = value.get<double>();
    else if (key == "tolerances") {
      for (const auto& [tk, tv] : value.items()) {
        if (tk == "quadrature") cfg.tol.quadrature = tv.get<double>();
        else if (tk == "ode_rel") cfg.tol.ode_rel = tv.get<double>();
        else if (tk == "ode_abs") cfg.tol.ode_abs = tv.get<double>();
        else if (tk == "residual") cfg.tol.residual = tv.get<double>();
        else throw ConfigError("unknown tolerance key: " + tk);
      }
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  if (have_j0 != have_energy)
    throw ConfigError("j0 and energy must be supplied together");
  cfg.user_dispersion = have_j0;
  cfg.params.validate();
  return cfg;
}

/// Fill (j0, energy) from the dispersion relation unless the user pinned them.
void ensure_dispersion(RunConfig& cfg) {
  if (cfg.user_dispersion) return;
  const auto r = wgflow::solve_dispersion(cfg.params, cfg.convention);
  cfg.params.j0 = r.j0;
  cfg.params.energy = r.energy;
  cfg.params.dispersion_solved = true;
}

std::vector<double> uniform_grid(double length, std::size_t n,
                                 bool interior = false) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + (interior ? 1.0 : 0.0)) /
                     static_cast<double>(n - 1 + (interior ? 2 : 0));
    g[i] = t * length;
  }
  return g;
}

/// Equally spaced samples with points coinciding with density nodes shifted
/// into the regular region by epsilon = 1e-9 * L.
std::vector<double> node_shifted_grid(const wgflow::DensityProfile& profile,
                                      std::size_t n) {
  const double L = profile.length();
  const double eps = 1e-9 * L;
  auto grid = uniform_grid(L, n);
  const auto nodes = profile.nodes();
  for (double& x : grid) {
    for (double nd : nodes) {
      if (std::abs(x - nd) < eps) {
        x = nd + eps <= L ? nd + eps : nd - eps;
        break;
      }
    }
  }
  return grid;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write output file: " + path);
  return out;
}

json dispersion_report(const RunConfig& cfg) {
  const auto r = wgflow::solve_dispersion(cfg.params, cfg.convention);
  auto params = cfg.params;
  params.j0 = r.j0;
  params.energy = r.energy;
  const auto grid = uniform_grid(params.length, 10000);
  const double residual =
      wgflow::coupled_residual(params, grid, cfg.convention);
  return json{
      {"j0_re", r.j0.real()},
      {"j0_im", r.j0.imag()},
      {"energy", r.energy},
      {"convention", cfg.convention == wgflow::AmplitudeConvention::Uniform
                         ? "uniform"
                         : "quadrature-phase"},
      {"amplitude_ratio_im", r.amplitude_ratio.imag()},
      {"degenerate", r.degenerate},
      {"max_residual", residual},
  };
}

int cmd_dispersion(RunConfig cfg, const std::string& out_path) {
  json report;
  try {
    report = dispersion_report(cfg);
  } catch (const wgflow::dispersion_inconsistency& e) {
    report = json{
        {"error", "inconsistent amplitude convention"},
        {"message", e.what()},
        {"j0_candidate_from_main_re", e.j0_from_main.real()},
        {"j0_candidate_from_main_im", e.j0_from_main.imag()},
        {"j0_candidate_from_aux_re", e.j0_from_aux.real()},
        {"j0_candidate_from_aux_im", e.j0_from_aux.imag()},
    };
    std::cout << report.dump(2) << "\n";
    return kExitVerification;
  }
  std::cout << report.dump(2) << "\n";
  if (!out_path.empty()) open_output(out_path) << report.dump(2) << "\n";
  return report["max_residual"].get<double>() < cfg.tol.residual
             ? kExitOk
             : kExitVerification;
}

int cmd_velocity(RunConfig cfg, std::size_t samples,
                 const std::string& out_path) {
  if (samples < 2) throw ConfigError("sample count must be at least 2");
  ensure_dispersion(cfg);
  const wgflow::DensityProfile profile(cfg.params, cfg.guide);
  const auto wf =
      wgflow::make_wavefunction(cfg.params, cfg.guide, true, cfg.convention);
  const double c = wgflow::fit_flux_constant(profile, wf);

  wgflow::io::Table table;
  table.comments = {"wgflow velocity profile",
                    "seed=" + std::to_string(cfg.seed),
                    "node_shift_epsilon=" +
                        wgflow::io::format_number(1e-9 * cfg.params.length),
                    "flux_constant=" + wgflow::io::format_number(c)};
  table.header = {"x", "rho", "v_phase", "v_continuity", "flux"};
  for (double x : node_shifted_grid(profile, samples)) {
    const double rho = profile(x);
    const double vp = wgflow::phase_gradient_velocity(wf, x);
    const double vc = wgflow::continuity_velocity(profile, c, x);
    table.rows.push_back({x, rho, vp, vc, rho * vc});
  }
  if (out_path.empty()) {
    wgflow::io::write_table(std::cout, table);
  } else {
    auto out = open_output(out_path);
    wgflow::io::write_table(out, table);
  }
  return kExitOk;
}

int cmd_trajectory(RunConfig cfg, double x0, double t_final,
                   const std::string& method, const std::string& out_path,
                   std::size_t samples) {
  ensure_dispersion(cfg);
  const wgflow::DensityProfile profile(cfg.params, cfg.guide);
  const auto wf =
      wgflow::make_wavefunction(cfg.params, cfg.guide, true, cfg.convention);
  const double c = wgflow::fit_flux_constant(profile, wf);

  wgflow::TrajectoryPath path;
  if (method == "analytic") {
    path = wgflow::integrate_analytic(profile, c, x0, t_final, cfg.boundary,
                                      samples);
  } else if (method == "ode") {
    const auto field = wgflow::VelocityField::continuity(profile, c);
    wgflow::OdeControls controls;
    controls.rel_tol = cfg.tol.ode_rel;
    controls.abs_tol = cfg.tol.ode_abs;
    path = wgflow::integrate_ode(field, x0, t_final, cfg.boundary, controls);
  } else {
    throw ConfigError("method must be 'analytic' or 'ode'");
  }

  const char* status =
      path.terminal == wgflow::TrajectoryPath::Terminal::Completed
          ? "Completed"
          : path.terminal == wgflow::TrajectoryPath::Terminal::Absorbed
                ? "Absorbed"
                : "StepLimit";
  wgflow::io::Table table;
  table.comments = {"wgflow trajectory", "method=" + method,
                    std::string("terminal=") + status};
  if (path.terminal == wgflow::TrajectoryPath::Terminal::Absorbed)
    table.comments.push_back(
        "absorb_time=" + wgflow::io::format_number(path.absorb_time));
  table.header = {"t", "x"};
  for (const auto& s : path.samples) table.rows.push_back({s.t, s.x});
  if (out_path.empty()) {
    wgflow::io::write_table(std::cout, table);
  } else {
    auto out = open_output(out_path);
    wgflow::io::write_table(out, table);
  }
  return kExitOk;
}

int cmd_ensemble(RunConfig cfg, std::size_t n, double dt,
                 const std::string& field_kind, std::size_t bins,
                 const std::string& out_path) {
  if (n < 10) throw ConfigError("ensemble size must be at least 10");
  ensure_dispersion(cfg);
  const wgflow::DensityProfile profile(cfg.params, cfg.guide);
  const auto wf =
      wgflow::make_wavefunction(cfg.params, cfg.guide, true, cfg.convention);
  const double c = wgflow::fit_flux_constant(profile, wf);

  auto ensemble = wgflow::sample_initial(profile, n, cfg.seed);
  if (field_kind == "continuity") {
    ensemble = wgflow::propagate(ensemble, profile, c, dt, cfg.boundary);
  } else if (field_kind == "phase") {
    const double v = cfg.params.hbar * cfg.params.k2 / cfg.params.mass;
    ensemble = wgflow::propagate_constant(ensemble, v, cfg.params.length, dt,
                                          cfg.boundary);
  } else {
    throw ConfigError("field must be 'phase' or 'continuity'");
  }

  wgflow::io::Table table;
  table.comments = {"wgflow ensemble histogram",
                    "seed=" + std::to_string(cfg.seed),
                    "field=" + field_kind};
  table.header = {"bin_center", "empirical", "expected"};
  if (!ensemble.positions.empty()) {
    for (const auto& bin :
         wgflow::histogram(ensemble, cfg.params.length, bins))
      table.rows.push_back({bin.center, bin.density, profile(bin.center)});
  }
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    wgflow::io::write_table(out, table);
  }

  json report{{"seed", cfg.seed},
              {"n", n},
              {"dt", dt},
              {"field", field_kind},
              {"absorbed", ensemble.absorbed}};
  bool passed = true;
  if (cfg.boundary == wgflow::BoundaryPolicy::Periodic) {
    const auto fit = wgflow::ks_distance(ensemble, profile, cfg.alpha);
    report["ks"] = fit.ks_statistic;
    report["threshold"] = fit.threshold;
    report["passed"] = fit.passed;
    passed = fit.passed;
  } else {
    report["ks_test"] = "skipped (absorbing boundary)";
  }
  std::cout << report.dump(2) << "\n";
  return passed ? kExitOk : kExitVerification;
}

int cmd_verify(RunConfig cfg) {
  ensure_dispersion(cfg);
  const auto& p = cfg.params;
  const wgflow::DensityProfile profile(p, cfg.guide);
  const auto wf = wgflow::make_wavefunction(p, cfg.guide, true, cfg.convention);
  const double c = wgflow::fit_flux_constant(profile, wf);
  const auto continuity = wgflow::VelocityField::continuity(profile, c);
  const auto phase = wgflow::VelocityField::phase_gradient(wf);

  json checks = json::array();
  bool all = true;
  auto record = [&](const std::string& name, double value, double bound,
                    bool pass) {
    checks.push_back({{"name", name},
                      {"value", value},
                      {"bound", bound},
                      {"passed", pass}});
    all = all && pass;
  };

  // dispersion residual
  const auto grid = uniform_grid(p.length, 10000);
  const double disp = wgflow::coupled_residual(p, grid, cfg.convention);
  record("dispersion_residual", disp, cfg.tol.residual,
         disp < cfg.tol.residual);

  // normalization: closed form vs quadrature
  const double a_closed = wgflow::normalization_constant(p, cfg.guide);
  const double integral = wgflow::integrate(
      [&](double x) {
        const double t = cfg.guide == wgflow::WaveguideKind::Main
                             ? std::cos(p.k1 * x)
                             : std::sin(p.k1 * x);
        return t * t;
      },
      0.0, p.length, cfg.tol.quadrature);
  const double a_quad = 1.0 / std::sqrt(integral);
  const double norm_diff = std::abs(a_closed - a_quad);
  record("normalization_cross_check", norm_diff, 1e-10, norm_diff < 1e-10);

  // continuity residuals, both schemes
  const auto interior = uniform_grid(p.length, 1001, true);
  const double res_analytic = wgflow::continuity_residual(
      continuity, profile, interior, wgflow::ResidualScheme::Analytic);
  record("continuity_residual_analytic", res_analytic, 0.0,
         res_analytic == 0.0);
  const double res_diff = wgflow::continuity_residual(
      continuity, profile, interior, wgflow::ResidualScheme::CentralDifference,
      1e-4 * p.length);
  record("continuity_residual_central_difference", res_diff, 1e-6,
         res_diff < 1e-6);

  // the phase-gradient field violates stationarity unless rho is constant
  const double res_phase = wgflow::continuity_residual(
      phase, profile, interior, wgflow::ResidualScheme::Analytic);
  double max_drho = 0.0;
  for (double x : interior)
    max_drho = std::max(max_drho, std::abs(profile.derivative(x)));
  const double expected_phase = p.hbar * p.k2 / p.mass * max_drho;
  const double phase_diff = std::abs(res_phase - expected_phase);
  record("phase_field_residual_matches_closed_form", phase_diff, 1e-8,
         phase_diff < 1e-8);

  // average matching
  const double mean_v = p.hbar * p.k2 / p.mass;
  const double avg_c = wgflow::average_velocity(profile, continuity);
  const double avg_p = wgflow::average_velocity(profile, phase);
  record("average_velocity_continuity", std::abs(avg_c - mean_v), 1e-9,
         std::abs(avg_c - mean_v) < 1e-9);
  record("average_velocity_phase", std::abs(avg_p - mean_v), 1e-9,
         std::abs(avg_p - mean_v) < 1e-9);

  // transit-time universality across k1 (density shape cancels)
  if (c > 0.0) {
    const double expected_t = p.mass * p.length / (p.hbar * p.k2);
    double worst = 0.0;
    for (double mult : {1.0, 2.0, 3.0, 5.0}) {
      auto q = p;
      q.k1 = mult * std::numbers::pi / p.length;
      const wgflow::DensityProfile prof_k(q, cfg.guide);
      const auto wf_k =
          wgflow::make_wavefunction(q, cfg.guide, true, cfg.convention);
      const double c_k = wgflow::fit_flux_constant(prof_k, wf_k);
      worst = std::max(
          worst, std::abs(wgflow::transit_time(prof_k, c_k, 0.0) - expected_t));
    }
    record("transit_time_universality", worst, 1e-12, worst < 1e-12);
  }

  json report{{"checks", checks}, {"all_passed", all}};
  if (!all) {
    for (const auto& ch : checks)
      if (!ch["passed"].get<bool>()) {
        report["first_failure"] = ch["name"];
        break;
      }
  }
  std::cout << report.dump(2) << "\n";
  return all ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bohmian trajectory simulator for two coupled waveguides"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::string> guide_flag, convention_flag, boundary_flag;
  std::optional<double> k1_flag, k2_flag, hbar_flag, mass_flag, length_flag,
      v0_flag;
  std::string field_kind = "continuity";
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "output file path");
  app.add_option("--seed", seed_flag, "random seed (overrides config)");
  app.add_option("--guide", guide_flag, "waveguide: main|aux");
  app.add_option("--convention", convention_flag,
                 "amplitude convention: uniform|quadrature-phase");
  app.add_option("--boundary", boundary_flag, "boundary: absorb|periodic");
  app.add_option("--field", field_kind, "velocity field: phase|continuity");
  app.add_option("--k1", k1_flag, "transverse wavenumber k1");
  app.add_option("--k2", k2_flag, "propagation wavenumber k2");
  app.add_option("--hbar", hbar_flag, "reduced Planck constant");
  app.add_option("--mass", mass_flag, "particle mass");
  app.add_option("--length", length_flag, "waveguide length L");
  app.add_option("--v0", v0_flag, "potential offset V0");

  auto* sub_dispersion =
      app.add_subcommand("dispersion", "solve for (J0, E) and verify");
  auto* sub_velocity =
      app.add_subcommand("velocity", "emit velocity-field CSV");
  std::size_t samples = 101;
  sub_velocity->add_option("--samples", samples, "number of sample points");
  auto* sub_trajectory =
      app.add_subcommand("trajectory", "integrate a single trajectory");
  double x0 = 0.0, t_final = 0.0;
  std::string method = "analytic";
  std::size_t traj_samples = 101;
  sub_trajectory->add_option("--x0", x0, "initial position")->required();
  sub_trajectory->add_option("--t-final", t_final, "time horizon")->required();
  sub_trajectory->add_option("--method", method, "analytic|ode");
  sub_trajectory->add_option("--samples", traj_samples,
                             "samples on an analytic path");
  auto* sub_ensemble =
      app.add_subcommand("ensemble", "propagate an ensemble and test fit");
  std::size_t n = 100000, bins = 50;
  double dt = 0.05;
  sub_ensemble->add_option("--n", n, "ensemble size");
  sub_ensemble->add_option("--dt", dt, "propagation time");
  sub_ensemble->add_option("--bins", bins, "histogram bins");
  auto* sub_verify =
      app.add_subcommand("verify", "run the aggregate verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig cfg =
        config_path.empty() ? RunConfig{} : load_config(config_path);
    if (seed_flag) cfg.seed = *seed_flag;
    if (guide_flag) cfg.guide = parse_guide(*guide_flag);
    if (convention_flag) cfg.convention = parse_convention(*convention_flag);
    if (boundary_flag) cfg.boundary = parse_boundary(*boundary_flag);
    if (k1_flag) cfg.params.k1 = *k1_flag;
    if (k2_flag) cfg.params.k2 = *k2_flag;
    if (hbar_flag) cfg.params.hbar = *hbar_flag;
    if (mass_flag) cfg.params.mass = *mass_flag;
    if (length_flag) cfg.params.length = *length_flag;
    if (v0_flag) cfg.params.v0 = *v0_flag;
    cfg.params.validate();

    if (sub_dispersion->parsed()) return cmd_dispersion(cfg, out_path);
    if (sub_velocity->parsed()) return cmd_velocity(cfg, samples, out_path);
    if (sub_trajectory->parsed())
      return cmd_trajectory(cfg, x0, t_final, method, out_path, traj_samples);
    if (sub_ensemble->parsed())
      return cmd_ensemble(cfg, n, dt, field_kind, bins, out_path);
    if (sub_verify->parsed()) return cmd_verify(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wgflow::invalid_parameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wgflow::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const wgflow::degenerate_density& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
