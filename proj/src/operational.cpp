#include "sarb/operational.hpp"

#include <cmath>
#include <limits>

#include "sarb/degradation.hpp"

namespace sarb {

double SinusoidalPolicy::u_at(double t_hours) const {
  return -u1 * std::sin(omega0 * t_hours);
}

double SinusoidalPolicy::e_at(double t_hours) const {
  return e0 + e1 * std::cos(omega0 * t_hours);
}

SinusoidalPolicy infinite_policy(const DemandProfile& demand, double a, double gamma,
                                 double e0_mwh) {
  if (!(a > 0.0)) throw DomainError("infinite_policy: a must be > 0");
  if (!(gamma >= 0.0)) throw DomainError("infinite_policy: gamma must be >= 0");
  const double theta2 = gamma / a;
  const double w2 = demand.omega0 * demand.omega0;
  SinusoidalPolicy p;
  p.u1 = demand.d1 * w2 / (theta2 + w2);
  p.e1 = demand.d1 * demand.omega0 / (theta2 + w2);
  p.e0 = e0_mwh;
  p.omega0 = demand.omega0;
  p.gamma = gamma;
  p.theta = std::sqrt(theta2);
  return p;
}

FiniteHorizonSolution::FiniteHorizonSolution(const DemandProfile& demand,
                                             const GenerationCostParams& g, double gamma,
                                             double e0_mwh, double t0_hours,
                                             double tf_hours)
    : t0_(t0_hours), tf_(tf_hours), gamma_(gamma), omega0_(demand.omega0),
      d1_(demand.d1), e0_(e0_mwh) {
  if (!(tf_ > t0_)) throw DomainError("finite_solution: tf must be > t0");
  if (!(gamma_ > 0.0)) throw DomainError("finite_solution: gamma must be > 0");
  beta_ = g.a * demand.d0 + g.b;
  theta_ = std::sqrt(gamma_ / g.a);
  const double span = theta_ * (tf_ - t0_);
  if (span > 1e4)
    throw NumericalOverflow("finite_solution: theta*(tf-t0) exceeds the stable range");
  const double w2 = omega0_ * omega0_;
  const double th2 = theta_ * theta_;
  u1_ = d1_ * w2 / (th2 + w2);
  e1_ = d1_ * omega0_ / (th2 + w2);
  q_ = beta_ / g.a;
  s0_ = d1_ * th2 / (th2 + w2) * std::sin(omega0_ * t0_);
  sf_ = d1_ * th2 / (th2 + w2) * std::sin(omega0_ * tf_);
  den_ = -std::expm1(-2.0 * span);
}

double FiniteHorizonSolution::u_at(double t_hours) const {
  const double tau = t_hours - t0_;
  const double rem = tf_ - t_hours;
  const double r_far = std::exp(-theta_ * tau) * (-std::expm1(-2.0 * theta_ * rem)) / den_;
  const double r_near = std::exp(-theta_ * rem) * (-std::expm1(-2.0 * theta_ * tau)) / den_;
  return -u1_ * std::sin(omega0_ * t_hours) - (q_ + s0_) * r_far - (q_ + sf_) * r_near;
}

double FiniteHorizonSolution::e_at(double t_hours) const {
  const double tau = t_hours - t0_;
  const double rem = tf_ - t_hours;
  const double c_far = std::exp(-theta_ * tau) * (1.0 + std::exp(-2.0 * theta_ * rem)) / den_;
  const double c_near = std::exp(-theta_ * rem) * (1.0 + std::exp(-2.0 * theta_ * tau)) / den_;
  return e0_ + e1_ * std::cos(omega0_ * t_hours) +
         ((q_ + s0_) * c_far - (q_ + sf_) * c_near) / theta_;
}

double avg_generation_cost(const DemandProfile& demand, const GenerationCostParams& g,
                           double u1_mw) {
  if (!(u1_mw >= 0.0 && u1_mw <= demand.d1 * (1.0 + 1e-12)))
    throw DomainError("avg_generation_cost: need 0 <= u1 <= d1");
  const double p1 = demand.d1 - u1_mw;
  return 0.25 * g.a * p1 * p1 + 0.5 * g.a * demand.d0 * demand.d0 + g.b * demand.d0;
}

double avg_storage_cost(const SinusoidalPolicy& policy, double capacity_mwh,
                        const StorageTech& tech) {
  if (policy.e1 == 0.0) return 0.0;
  if (!(capacity_mwh > 0.0)) throw DomainError("avg_storage_cost: capacity must be > 0");
  const double y = 2.0 * policy.e1 / capacity_mwh;
  if (y > 1.0 + 1e-9)
    throw DomainError("avg_storage_cost: cycle depth 2*e1 exceeds capacity");
  return phi(tech.curve, std::min(y, 1.0)) * capacity_mwh * tech.rho * policy.omega0 /
         (2.0 * M_PI);
}

CostBreakdown baseline_cost(const DemandProfile& demand, const GenerationCostParams& g) {
  CostBreakdown out{};
  out.baseline = avg_generation_cost(demand, g, 0.0);
  out.j_g = out.baseline;
  out.j_s = 0.0;
  out.j_total = out.baseline;
  out.savings = 0.0;
  out.savings_fraction = 0.0;
  return out;
}

CostBreakdown total_cost(const DemandProfile& demand, const GenerationCostParams& g,
                         const StorageTech& tech, double gamma, double capacity_mwh) {
  if (capacity_mwh == 0.0) return baseline_cost(demand, g);
  CostBreakdown out{};
  out.baseline = avg_generation_cost(demand, g, 0.0);
  const SinusoidalPolicy policy =
      infinite_policy(demand, g.a, gamma, 0.5 * capacity_mwh);
  if (2.0 * policy.e1 > capacity_mwh * (1.0 + 1e-9))
    throw InfeasibleOperation("total_cost: depth constraint violated (2*e1 > C)");
  if (policy.u1 > capacity_mwh / tech.epsilon * (1.0 + 1e-9))
    throw InfeasibleOperation("total_cost: rate constraint violated (u1 > C/epsilon)");
  out.j_g = avg_generation_cost(demand, g, policy.u1);
  out.j_s = avg_storage_cost(policy, capacity_mwh, tech);
  out.j_total = out.j_g + out.j_s;
  out.savings = out.baseline - out.j_total;
  out.savings_fraction = out.savings / out.baseline;
  return out;
}

double lifespan(const SinusoidalPolicy& policy, double capacity_mwh,
                const StorageTech& tech) {
  if (policy.e1 == 0.0) return std::numeric_limits<double>::infinity();
  if (!(capacity_mwh > 0.0)) throw DomainError("lifespan: capacity must be > 0");
  const double y = 2.0 * policy.e1 / capacity_mwh;
  if (y > 1.0 + 1e-9) throw DomainError("lifespan: cycle depth 2*e1 exceeds capacity");
  return 2.0 * M_PI / (policy.omega0 * phi(tech.curve, std::min(y, 1.0)));
}

}  // namespace sarb
