#pragma once

// Cycle-depth stress function Phi, its inverse and stationary point,
// the strong-convexity check, and rainflow cycle extraction.

#include <vector>

#include "sarb/model.hpp"

namespace sarb {

// One extracted charge/discharge cycle: depth normalized by capacity,
// weight 1.0 for a full cycle and 0.5 for a half cycle.
struct Cycle {
  double depth;   // in (0,1]
  double weight;  // 0.5 or 1.0
};

struct CycleSet {
  std::vector<Cycle> cycles;

  double total_weight() const;
  double total_weighted_depth() const;
};

// Phi(y) = 1/(k1*y^k2 + k3), the life fraction lost by one cycle of
// normalized depth y. DomainError if y is outside (0,1] or the
// denominator is not positive.
double phi(const DegradationCurve& curve, double y);

// Inverse of Phi on (0,1], solved by log-space bisection with a Newton
// polish. DomainError if loss is outside (0, Phi(1)].
double phi_inverse(const DegradationCurve& curve, double loss);

// Analytic d/dy [Phi(y)/y] of the parametric curve.
double phi_over_y_prime(const DegradationCurve& curve, double y);

// Root of d/dy [Phi(y)/y] in (0,1]. If Phi(y)/y is monotone there is no
// interior root and the boundary with the smaller Phi(y)/y is returned.
// AssumptionViolated if (Phi/y)'' is clearly negative on the search grid.
double stationary_depth(const DegradationCurve& curve);

// True iff Phi is increasing and (Phi(y)/y)'' > 0 at all grid points of
// [1e-3, 1] (central differences, h = 1e-4).
bool check_stress_convexity(const DegradationCurve& curve, int n_grid);

// ASTM-style rainflow extraction on the turning points of a stored-energy
// trajectory; depths are normalized by capacity. DomainError if any sample
// leaves [0, capacity].
CycleSet rainflow(const Trajectory& e, double capacity_mwh);

// Sum of weight * Phi(depth) * capacity * rho over all cycles.
double storage_cost(const CycleSet& cycles, double capacity_mwh, double rho,
                    const DegradationCurve& curve);

}  // namespace sarb
