#pragma once

// Independent numerical ground truth: the finite-horizon auxiliary problem
// discretized as a convex quadratic program in the node energies and solved
// exactly through its tridiagonal stationarity system.

#include <vector>

#include "sarb/operational.hpp"

namespace sarb {

// min sum_k [(a/2)(d_k+u_k)^2 + b(d_k+u_k)]*dt + sum_k w_k (gamma/2)(e_k-e0)^2*dt
// s.t. e_{k+1} = e_k + u_k*dt, endpoints free.
//
// Demand is sampled at interval midpoints and the energy penalty carries
// trapezoid weights w = [1/2, 1, ..., 1, 1/2]; both are needed for the
// scheme to track the continuous solution at second order in dt.
struct DiscreteProblem {
  double t0 = 0.0;
  double tf = 0.0;
  int n_steps = 0;
  double dt = 0.0;
  std::vector<double> demand;  // n_steps midpoint samples (MW)
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double e0 = 0.0;

  // Samples the demand profile; DomainError unless n_steps gives at least
  // 16 steps per demand period and dt*theta <= 0.1.
  static DiscreteProblem from_profile(const DemandProfile& demand,
                                      const GenerationCostParams& g, double gamma,
                                      double e0_mwh, double t0_hours, double tf_hours,
                                      int n_steps);

  // Caller-provided midpoint demand samples; only dt*theta is checked.
  static DiscreteProblem from_samples(std::vector<double> demand_mw,
                                      const GenerationCostParams& g, double gamma,
                                      double e0_mwh, double t0_hours, double tf_hours);
};

struct QpSolution {
  Trajectory u;  // n_steps samples at interval midpoints
  Trajectory e;  // n_steps+1 samples at nodes
  double objective;
};

QpSolution solve_qp(const DiscreteProblem& p);

// Discrete objective of an arbitrary control candidate (energies rebuilt
// from e_init by the exact dynamics).
double objective(const DiscreteProblem& p, const std::vector<double>& u, double e_init);

// Max objective DECREASE found by n_trials random single-coordinate
// perturbations (coordinates: e_init and every u_k) of the given relative
// magnitude. Nonpositive up to roundoff when (u, e_init) is the optimum.
double perturbation_audit(const DiscreteProblem& p, const Trajectory& u, double e_init,
                          int n_trials, double magnitude, unsigned seed);

struct TrajectoryErrors {
  double sup_rel_u;
  double sup_rel_e;
  double l2_rel_u;
  double l2_rel_e;
};

// Errors of the numeric solution against an analytic one over the central
// `window` fraction of the horizon, normalized by the sup of the analytic
// trajectory on that window. GridMismatch if u/e grids are inconsistent.
TrajectoryErrors compare(const SinusoidalPolicy& analytic, const QpSolution& numeric,
                         double window);
TrajectoryErrors compare(const FiniteHorizonSolution& analytic, const QpSolution& numeric);

}  // namespace sarb
