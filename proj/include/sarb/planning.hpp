#pragma once

// Storage sizing: optimal cycle depth and penalty from the stationarity
// conditions, the resulting capacity, and an exhaustive grid verifier.

#include <string>

#include "sarb/operational.hpp"

namespace sarb {

struct PlanningBounds {
  double y_lb;   // lifespan-induced lower bound on normalized depth
  double y_ub;   // rate-induced upper bound 2/(epsilon*omega0)
  double y_max;  // min(y_ub, 1)
};

enum class Binding { interior, lifespan_bound, rate_bound, depth_bound_one, no_storage };

std::string to_string(Binding b);

struct PlanningSolution {
  bool storage_used;
  double gamma_star;  // +infinity when storage is not used
  double y_star;
  double c_star;      // MWh; 0 when storage is not used
  SinusoidalPolicy policy;
  CostBreakdown costs;
  Binding binding;
};

// Depth bounds from the lifespan and charge-rate constraints.
// InfeasiblePlanning when the admissible interval is empty.
PlanningBounds bounds(const StorageTech& tech, double omega0);

// gamma_s = 2*omega0^2*a*rho / (d1*pi*a*y/Phi(y) - 2*rho); +infinity when the
// denominator is not positive (storage not worth using).
double gamma_stationary(const DemandProfile& demand, const GenerationCostParams& g,
                        const StorageTech& tech, double y_star);

// True iff the marginal storage cost exceeds the marginal generation cost at
// full fluctuation: (rho/pi)*Phi(y)/y > (a/2)*d1.
bool no_storage_condition(const DemandProfile& demand, const GenerationCostParams& g,
                          const StorageTech& tech, double y_star);

// Projects the stationary depth onto the admissible interval, evaluates the
// stationary penalty there, and sizes the capacity C = 2*e1(gamma)/y. Falls
// back to the no-storage solution when gamma_s is infinite or the candidate
// does not beat the baseline.
PlanningSolution solve(const DemandProfile& demand, const GenerationCostParams& g,
                       const StorageTech& tech);

struct GridVerifyResult {
  double best_y;
  double best_gamma;
  double best_capacity;
  double best_objective;
  double closed_objective;  // objective of solve() on the same instance
  double gap;               // |best - closed| / closed
  bool best_is_no_storage;
  double y_cell;            // y grid spacing
};

// Exhaustive minimization of the operational cost over an n_y x n_gamma grid
// (y linear in [y_lb, y_max], gamma log-spaced in [1e-9, 1e3]*a*omega0^2),
// plus the C = 0 boundary. Grid cells are independent; the argmin is reduced
// deterministically (by value, then by lexicographic index).
GridVerifyResult grid_verify(const DemandProfile& demand, const GenerationCostParams& g,
                             const StorageTech& tech, int n_y, int n_gamma);

}  // namespace sarb
