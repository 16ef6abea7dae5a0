#pragma once

// Command implementations behind the storage-arb executable, kept separate
// from argument parsing so they can be driven directly from tests.

#include <iosfwd>
#include <string>

#include "sarb/model.hpp"
#include "sarb/planning.hpp"

namespace sarb::cli {

// Exit codes shared by all commands.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailure = 1;
inline constexpr int kValidationError = 2;
inline constexpr int kInfeasible = 3;

struct RunConfig {
  // demand: CSV + period when csv_path is set, explicit profile otherwise
  std::string csv_path;
  double period_hours = 24.0;
  double d0 = 18091.0;
  double d1 = 4671.0;
  double omega0 = 0.26;  // rad/hour

  double a = 0.02;   // USD/(MW^2 h)
  double b = 16.24;  // USD/MWh

  double epsilon = 2.0;       // hours
  double rho = 209000.0;      // USD/MWh
  double k1 = 1.4e5;
  double k2 = -0.5;
  double k3 = -1.23e5;
  double tmax_years = 76.0;

  double omega_lo = 0.26;
  double omega_hi = 37.66;
  int sweep_points = 50;

  std::string out_path;  // sweep CSV destination; empty writes to stdout
  unsigned seed = 0;

  DemandProfile demand() const;  // resolves csv_path when set
  GenerationCostParams generation() const;
  StorageTech tech() const;
};

// Lifetime savings over build cost; zero when no storage is built.
double returning_rate(const PlanningSolution& s, const StorageTech& tech);

int run_fit_demand(const std::string& csv_path, double period_hours, std::ostream& out,
                   std::ostream& err);
int run_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Header of the sweep CSV, stable across runs.
extern const char* const kSweepCsvHeader;

}  // namespace sarb::cli
