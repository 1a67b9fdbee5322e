// spectator: scenario sweeps, figure datasets and self-checks for the
// spectator-entangled e+ e- -> mu+ mu- simulation.
//
// Exit codes: 0 success, 2 bad arguments or I/O, 3 numerical contract
// violation.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "spectator/spectator.hpp"

namespace {

// Flag values land here first; values from --config only replace fields
// whose flag was not given on the command line.
struct FlagSet {
  spectator::RunConfig vals;
  std::string config_path;
  int quad = 0;
  CLI::Option *state = nullptr, *emin = nullptr, *emax = nullptr, *steps = nullptr,
              *amin = nullptr, *amax = nullptr, *asteps = nullptr, *eta = nullptr,
              *out = nullptr, *quad_opt = nullptr;
};

void add_common_flags(CLI::App* cmd, FlagSet& f) {
  cmd->add_option("--config", f.config_path, "JSON config file; flags override its values");
  f.state = cmd->add_option("--state", f.vals.state,
                            "ghz | w | a-psi[:+|-] | a-phi[:+|-] | general:<8 complex> | "
                            "bc-mixture:<4 complex>");
  f.emin = cmd->add_option("--emin", f.vals.e_min, "lower beam energy, units of m_mu");
  f.emax = cmd->add_option("--emax", f.vals.e_max, "upper beam energy, units of m_mu");
  f.steps = cmd->add_option("--steps", f.vals.e_steps, "number of energy grid points");
  f.amin = cmd->add_option("--alpha-min", f.vals.alpha_min, "lower alpha, radians");
  f.amax = cmd->add_option("--alpha-max", f.vals.alpha_max, "upper alpha, radians");
  f.asteps = cmd->add_option("--alpha-steps", f.vals.alpha_steps, "number of alpha grid points");
  f.eta = cmd->add_option("--eta", f.vals.eta, "Bell selector: + (eta = pi/4) or - (3 pi/4)")
              ->check(CLI::IsMember({"+", "-"}));
  f.out = cmd->add_option("--out", f.vals.out, "output file (sweep) or directory (figures)");
  f.quad_opt = cmd->add_option("--quad", f.quad, "quadrature order for cos(theta) and phi");
}

spectator::RunConfig resolve(const FlagSet& f) {
  spectator::RunConfig cfg;
  if (!f.config_path.empty()) cfg.load_json(f.config_path);
  if (f.state->count()) cfg.state = f.vals.state;
  if (f.emin->count()) cfg.e_min = f.vals.e_min;
  if (f.emax->count()) cfg.e_max = f.vals.e_max;
  if (f.steps->count()) cfg.e_steps = f.vals.e_steps;
  if (f.amin->count()) cfg.alpha_min = f.vals.alpha_min;
  if (f.amax->count()) cfg.alpha_max = f.vals.alpha_max;
  if (f.asteps->count()) cfg.alpha_steps = f.vals.alpha_steps;
  if (f.eta->count()) cfg.eta = f.vals.eta;
  if (f.out->count()) cfg.out = f.vals.out;
  if (f.quad_opt->count()) {
    cfg.n_cos_theta = f.quad;
    cfg.n_phi = f.quad;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectator spin observables for e+ e- -> mu+ mu-"};
  app.require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep", "write one CSV row per (E, alpha) grid point");
  auto* figures = app.add_subcommand("figures", "regenerate the figure datasets fig2..fig9");
  auto* check = app.add_subcommand("check", "run the dual-path and contract self-test");

  FlagSet fs_sweep, fs_figures, fs_check;
  add_common_flags(sweep, fs_sweep);
  add_common_flags(figures, fs_figures);
  add_common_flags(check, fs_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) {
      const auto cfg = resolve(fs_sweep);
      spectator::run_sweep_to_file(cfg, cfg.out);
    } else if (figures->parsed()) {
      const auto cfg = resolve(fs_figures);
      spectator::run_figures(cfg, fs_figures.out->count() || cfg.out != "sweep.csv"
                                      ? cfg.out
                                      : std::string("figures"));
    } else if (check->parsed()) {
      return spectator::run_check(resolve(fs_check), std::cout);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const spectator::ContractError& e) {
    std::cerr << "numerical contract violation: " << e.what() << '\n';
    return 3;
  } catch (const spectator::ThresholdError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
