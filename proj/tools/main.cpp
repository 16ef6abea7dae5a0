#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sarb/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"storage-arb: battery arbitrage scheduling and sizing"};
  app.require_subcommand(1);

  sarb::cli::RunConfig cfg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->set_config("--config")->configurable(false);
    cmd->add_option("--d0", cfg.d0, "demand baseline (MW)");
    cmd->add_option("--d1", cfg.d1, "demand fluctuation amplitude (MW)");
    cmd->add_option("--omega0", cfg.omega0, "demand angular frequency (rad/hour)");
    cmd->add_option("--a", cfg.a, "quadratic generation cost coefficient");
    cmd->add_option("--b", cfg.b, "linear generation cost coefficient");
    cmd->add_option("--epsilon", cfg.epsilon, "capacity-to-power ratio (hours)");
    cmd->add_option("--rho", cfg.rho, "unit build cost (USD/MWh)");
    cmd->add_option("--k1", cfg.k1, "stress curve k1");
    cmd->add_option("--k2", cfg.k2, "stress curve k2");
    cmd->add_option("--k3", cfg.k3, "stress curve k3");
    cmd->add_option("--tmax-years", cfg.tmax_years, "maximum storage lifespan (years)");
    cmd->add_option("--csv", cfg.csv_path, "fit the demand profile from this CSV");
    cmd->add_option("--period-hours", cfg.period_hours, "demand period for CSV fitting");
  };

  std::string fit_csv;
  double fit_period = 24.0;
  auto* fit = app.add_subcommand("fit-demand", "fit DC + first harmonic to demand CSV");
  fit->add_option("csv", fit_csv, "input CSV (timestamp,demand_mw)")->required();
  fit->add_option("--period-hours", fit_period, "demand period (hours)");

  auto* plan = app.add_subcommand("plan", "solve the storage sizing problem");
  add_common(plan);

  auto* sweep = app.add_subcommand("sweep", "planning solutions over a frequency range");
  add_common(sweep);
  sweep->add_option("--omega-lo", cfg.omega_lo, "sweep start (rad/hour)");
  sweep->add_option("--omega-hi", cfg.omega_hi, "sweep end (rad/hour)");
  sweep->add_option("--points", cfg.sweep_points, "number of sweep points");
  sweep->add_option("--out", cfg.out_path, "output CSV path (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the numerical verification suite");
  add_common(verify);
  verify->add_option("--seed", cfg.seed, "seed for the perturbation audit");

  CLI11_PARSE(app, argc, argv);

  if (fit->parsed())
    return sarb::cli::run_fit_demand(fit_csv, fit_period, std::cout, std::cerr);
  if (plan->parsed()) return sarb::cli::run_plan(cfg, std::cout, std::cerr);
  if (sweep->parsed()) return sarb::cli::run_sweep(cfg, std::cout, std::cerr);
  if (verify->parsed()) return sarb::cli::run_verify(cfg, std::cout, std::cerr);
  return sarb::cli::kValidationError;
}
