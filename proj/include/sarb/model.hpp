#pragma once

// Shared domain types and the instantaneous cost/dynamics primitives.
//
// Units convention, used repo-wide: hours, MW, MWh, USD, rad/hour.
// One year = 8760 hours.

#include <cstddef>
#include <vector>

#include "sarb/errors.hpp"

namespace sarb {

inline constexpr double kHoursPerYear = 8760.0;

// d(t) = d0 + d1*sin(omega0*t)
struct DemandProfile {
  double d0;      // baseline power (MW)
  double d1;      // fluctuation amplitude (MW)
  double omega0;  // angular frequency (rad/hour)

  DemandProfile(double d0_, double d1_, double omega0_);

  double at(double t_hours) const;
  double period_hours() const;
};

// L_g(p) = (a/2)*p^2 + b*p
struct GenerationCostParams {
  double a;  // USD/(MW^2 * hour)
  double b;  // USD/MWh

  GenerationCostParams(double a_, double b_);
};

// Cycle-depth stress function Phi(y) = 1 / (k1*y^k2 + k3).
// Plain parameter holder; positivity and convexity of the resulting curve
// are checked where storage technologies are assembled (see degradation.hpp).
struct DegradationCurve {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
};

struct StorageTech {
  double epsilon;    // capacity-to-power ratio C/r (hours)
  double rho;        // one-time unit build cost (USD/MWh)
  double t_ls_max;   // maximum lifespan (hours)
  DegradationCurve curve;

  // Validates scalar parameters (DomainError) and the stress curve
  // against the strong-convexity assumption (AssumptionViolated).
  StorageTech(double epsilon_, double rho_, double t_ls_max_hours,
              const DegradationCurve& curve_);
};

struct StorageSpec {
  double capacity;          // C (MWh)
  double reference_energy;  // e0 (MWh)

  StorageSpec(double capacity_, double reference_energy_);
};

// Uniformly sampled time function (MW or MWh depending on context).
struct Trajectory {
  double t_start = 0.0;  // hour
  double dt = 0.0;       // hour
  std::vector<double> values;

  Trajectory(double t_start_, double dt_, std::vector<double> values_);

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
};

double generation_cost_rate(double p_mw, const GenerationCostParams& g);

inline double net_supply(double d_mw, double u_mw) { return d_mw + u_mw; }

// Forward-Euler cumulative integral of the storage dynamics e' = u.
// Output has one more sample than u: e[0] = e_init, e[k+1] = e[k] + u[k]*dt.
Trajectory integrate_storage(double e_init_mwh, const Trajectory& u);

}  // namespace sarb
