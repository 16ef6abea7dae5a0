#include "sarb/planning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sarb/degradation.hpp"

namespace sarb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

PlanningSolution no_storage_solution(const DemandProfile& demand,
                                     const GenerationCostParams& g, double y_star) {
  PlanningSolution s{};
  s.storage_used = false;
  s.gamma_star = kInf;
  s.y_star = y_star;
  s.c_star = 0.0;
  s.policy = SinusoidalPolicy{0.0, 0.0, 0.0, demand.omega0, kInf, kInf};
  s.costs = baseline_cost(demand, g);
  s.binding = Binding::no_storage;
  return s;
}
}  // namespace

std::string to_string(Binding b) {
  switch (b) {
    case Binding::interior: return "interior";
    case Binding::lifespan_bound: return "lifespan_bound";
    case Binding::rate_bound: return "rate_bound";
    case Binding::depth_bound_one: return "depth_bound_one";
    case Binding::no_storage: return "no_storage";
  }
  return "unknown";
}

PlanningBounds bounds(const StorageTech& tech, double omega0) {
  if (!(omega0 > 0.0)) throw DomainError("bounds: omega0 must be > 0");
  const double cycles_in_lifespan = tech.t_ls_max * omega0 / (2.0 * M_PI);
  const double required_loss = 1.0 / cycles_in_lifespan;
  if (required_loss > phi(tech.curve, 1.0))
    throw InfeasiblePlanning(
        "bounds: lifespan bound infeasible, even full-depth cycling outlives "
        "t_ls_max (y_lb > 1)");
  PlanningBounds b{};
  b.y_lb = phi_inverse(tech.curve, required_loss);
  b.y_ub = 2.0 / (tech.epsilon * omega0);
  b.y_max = std::min(b.y_ub, 1.0);
  if (b.y_lb > b.y_max)
    throw InfeasiblePlanning(
        "bounds: rate bound infeasible, y_ub = 2/(epsilon*omega0) < y_lb");
  return b;
}

double gamma_stationary(const DemandProfile& demand, const GenerationCostParams& g,
                        const StorageTech& tech, double y_star) {
  if (!(y_star > 0.0 && y_star <= 1.0))
    throw DomainError("gamma_stationary: y_star must be in (0,1]");
  const double denom =
      demand.d1 * M_PI * g.a * y_star / phi(tech.curve, y_star) - 2.0 * tech.rho;
  if (denom <= 0.0) return kInf;
  return 2.0 * demand.omega0 * demand.omega0 * g.a * tech.rho / denom;
}

bool no_storage_condition(const DemandProfile& demand, const GenerationCostParams& g,
                          const StorageTech& tech, double y_star) {
  if (!(y_star > 0.0 && y_star <= 1.0))
    throw DomainError("no_storage_condition: y_star must be in (0,1]");
  const double marginal_storage = tech.rho / M_PI * phi(tech.curve, y_star) / y_star;
  const double marginal_generation = 0.5 * g.a * demand.d1;
  return marginal_storage > marginal_generation;
}

PlanningSolution solve(const DemandProfile& demand, const GenerationCostParams& g,
                       const StorageTech& tech) {
  if (!check_stress_convexity(tech.curve, 64))
    throw AssumptionViolated("solve: stress curve violates the convexity assumption");
  const PlanningBounds b = bounds(tech, demand.omega0);

  const double y_s = stationary_depth(tech.curve);
  double y_star = y_s;
  Binding binding = Binding::interior;
  if (y_s < b.y_lb) {
    y_star = b.y_lb;
    binding = Binding::lifespan_bound;
  } else if (y_s > b.y_max) {
    y_star = b.y_max;
    binding = b.y_ub < 1.0 ? Binding::rate_bound : Binding::depth_bound_one;
  } else if (y_s >= 1.0 && phi_over_y_prime(tech.curve, 1.0) < 0.0) {
    // Phi/y is still decreasing at full depth: the unconstrained stationary
    // depth sits beyond 1 and the unit-depth constraint is what stops it.
    y_star = 1.0;
    binding = Binding::depth_bound_one;
  }

  if (demand.d1 == 0.0) return no_storage_solution(demand, g, y_star);
  const double gamma_star = gamma_stationary(demand, g, tech, y_star);
  if (std::isinf(gamma_star)) return no_storage_solution(demand, g, y_star);

  const double theta2 = gamma_star / g.a;
  const double w2 = demand.omega0 * demand.omega0;
  const double e1 = demand.d1 * demand.omega0 / (theta2 + w2);
  const double c_star = 2.0 * e1 / y_star;

  PlanningSolution s{};
  s.storage_used = true;
  s.gamma_star = gamma_star;
  s.y_star = y_star;
  s.c_star = c_star;
  s.policy = infinite_policy(demand, g.a, gamma_star, 0.5 * c_star);
  s.costs = total_cost(demand, g, tech, gamma_star, c_star);
  s.binding = binding;
  // The projected stationary point is only accepted if it beats J(0); a
  // clamped boundary candidate need not improve on building nothing.
  if (s.costs.j_total >= s.costs.baseline)
    return no_storage_solution(demand, g, y_star);
  return s;
}

GridVerifyResult grid_verify(const DemandProfile& demand, const GenerationCostParams& g,
                             const StorageTech& tech, int n_y, int n_gamma) {
  if (n_y < 100 || n_gamma < 100)
    throw DomainError("grid_verify: grids must have at least 100 points each");
  const PlanningBounds b = bounds(tech, demand.omega0);
  const double w2 = demand.omega0 * demand.omega0;
  const double gamma_lo = 1e-9 * g.a * w2;
  const double gamma_hi = 1e3 * g.a * w2;
  const double baseline = avg_generation_cost(demand, g, 0.0);

  GridVerifyResult r{};
  r.y_cell = (b.y_max - b.y_lb) / static_cast<double>(n_y - 1);
  // C = 0 boundary is always a candidate.
  r.best_y = 0.0;
  r.best_gamma = kInf;
  r.best_capacity = 0.0;
  r.best_objective = baseline;
  r.best_is_no_storage = true;

  const double log_lo = std::log(gamma_lo);
  const double log_step = std::log(gamma_hi / gamma_lo) / static_cast<double>(n_gamma - 1);
  for (int iy = 0; iy < n_y; ++iy) {
    const double y = b.y_lb + r.y_cell * static_cast<double>(iy);
    const double phi_over_y = phi(tech.curve, y) / y;
    for (int ig = 0; ig < n_gamma; ++ig) {
      const double gamma = std::exp(log_lo + log_step * static_cast<double>(ig));
      const double theta2 = gamma / g.a;
      const double u1 = demand.d1 * w2 / (theta2 + w2);
      const double e1 = demand.d1 * demand.omega0 / (theta2 + w2);
      // depth, rate and lifespan constraints hold on the grid by
      // construction: C = 2*e1/y with y in [y_lb, min(y_ub,1)].
      const double j = avg_generation_cost(demand, g, u1) +
                       2.0 * e1 * tech.rho * phi_over_y * demand.omega0 / (2.0 * M_PI);
      if (j < r.best_objective) {
        r.best_objective = j;
        r.best_y = y;
        r.best_gamma = gamma;
        r.best_capacity = 2.0 * e1 / y;
        r.best_is_no_storage = false;
      }
    }
  }

  const PlanningSolution closed = solve(demand, g, tech);
  r.closed_objective = closed.costs.j_total;
  r.gap = std::abs(r.best_objective - r.closed_objective) / r.closed_objective;
  return r;
}

}  // namespace sarb
