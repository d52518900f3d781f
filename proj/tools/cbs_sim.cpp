// Command line front end: saturation / angle sweeps of the coherent
// backscattering observables for a driven cold-atom pair, plus a built-in
// consistency check battery.
//
// Exit codes: 0 success, 1 usage/validation error, 2 numerical/runtime
// failure, 3 one or more --verify checks failed.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cbs/io.hpp"
#include "cbs/sweep.hpp"

namespace {

int run(const cbs::RunConfig& cfg, bool do_verify, bool corrupt_coupling_sign) {
  if (do_verify) {
    const cbs::VerifyReport report = cbs::verify(cfg, corrupt_coupling_sign);
    cbs::write_output(cfg.out_path, cbs::verify_render(report));
    return report.failures() == 0 ? 0 : 3;
  }
  std::string rendered;
  if (cfg.sweep == cbs::RunConfig::SweepKind::s) {
    const auto rows = cbs::sweep_s(cfg);
    rendered = cfg.format == cbs::RunConfig::Format::csv ? cbs::csv_render(rows)
                                                         : cbs::json_render(cfg, rows);
  } else {
    const auto rows = cbs::sweep_theta(cfg);
    rendered = cfg.format == cbs::RunConfig::Format::csv ? cbs::csv_render(rows)
                                                         : cbs::json_render(cfg, rows);
  }
  cbs::write_output(cfg.out_path, rendered);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Coherent backscattering of intense laser light by two distant cold atoms:\n"
      "disorder-averaged ladder/crossed intensities, elastic/inelastic split and\n"
      "enhancement factor, perturbative in the photon-exchange coupling."};

  cbs::RunConfig cfg;
  bool do_verify = false;
  bool corrupt_coupling_sign = false;
  std::string sweep = "s";
  std::string mode = "quad";
  std::string format = "csv";

  app.add_option("--sweep", sweep, "Sweep kind: s (saturation) or theta (detection angle)")
      ->check(CLI::IsMember({"s", "theta"}))
      ->capture_default_str();
  app.add_option("--s-min", cfg.s_min, "Smallest saturation parameter")->capture_default_str();
  app.add_option("--s-max", cfg.s_max, "Largest saturation parameter")->capture_default_str();
  app.add_option("--s-points", cfg.s_points, "Number of saturation grid points")
      ->capture_default_str();
  app.add_flag("--log,!--linear", cfg.log_grid, "Logarithmic (default) or linear s grid")
      ->capture_default_str();
  app.add_option("--s-fixed", cfg.s_fixed, "Saturation used by the theta sweep")
      ->capture_default_str();
  app.add_option("--theta-max", cfg.theta_max, "Largest detection angle (rad, <= 0.1)")
      ->capture_default_str();
  app.add_option("--theta-points", cfg.theta_points, "Number of theta grid points")
      ->capture_default_str();
  app.add_option("--delta", cfg.delta, "Laser detuning in units of gamma")
      ->capture_default_str();
  app.add_option("--r-mean", cfg.average.r_mean, "Mean pair separation (k0 r units)")
      ->capture_default_str();
  app.add_option("--window", cfg.average.window,
                 "Radial half-width in wavelengths (window of r12 around r-mean)")
      ->capture_default_str();
  app.add_option("--n-orient", cfg.average.n_orient, "Orientation nodes / samples (>= 64)")
      ->capture_default_str();
  app.add_option("--n-radial", cfg.average.n_radial, "Radial nodes / samples (>= 16)")
      ->capture_default_str();
  app.add_option("--mode", mode, "Averaging mode: quad (deterministic) or mc (monte-carlo)")
      ->check(CLI::IsMember({"quad", "mc"}))
      ->capture_default_str();
  app.add_option("--seed", cfg.average.seed, "Monte-carlo seed")->capture_default_str();
  app.add_option("--out", cfg.out_path, "Output path (default: stdout)");
  app.add_option("--format", format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_flag("--verify", do_verify,
               "Run the consistency check battery instead of a sweep; exit 3 on failure");
  // Intentionally undocumented test hook: flips the photon-exchange phase on
  // the reversed path so the reciprocity check must fail.
  app.add_flag("--corrupt-coupling-sign", corrupt_coupling_sign)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exits 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cfg.sweep = sweep == "s" ? cbs::RunConfig::SweepKind::s : cbs::RunConfig::SweepKind::theta;
  cfg.average.mode = mode == "quad" ? cbs::AverageSpec::Mode::quadrature
                                    : cbs::AverageSpec::Mode::monte_carlo;
  cfg.format = format == "csv" ? cbs::RunConfig::Format::csv : cbs::RunConfig::Format::json;

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 1;
  }

  try {
    return run(cfg, do_verify, corrupt_coupling_sign);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
