#pragma once

// Infinite-horizon optimal storage policy, the finite-horizon closed form
// with its boundary layers, and the average cost / lifespan formulas.

#include "sarb/model.hpp"

namespace sarb {

// u(t) = -u1*sin(omega0*t), e(t) = e0 + e1*cos(omega0*t) with
// u1 = d1*omega0^2/(theta^2+omega0^2), e1 = d1*omega0/(theta^2+omega0^2),
// theta = sqrt(gamma/a).
struct SinusoidalPolicy {
  double u1;      // charge amplitude (MW)
  double e1;      // energy amplitude (MWh)
  double e0;      // reference energy (MWh)
  double omega0;  // rad/hour
  double gamma;   // USD/(MWh^2 * hour)
  double theta;   // 1/hour

  double u_at(double t_hours) const;
  double e_at(double t_hours) const;
};

SinusoidalPolicy infinite_policy(const DemandProfile& demand, double a, double gamma,
                                 double e0_mwh);

// Finite-horizon solution on [t0, tf] with free endpoints. The hyperbolic
// boundary-layer terms are evaluated in exponentially scaled form, so they
// stay finite for theta*(tf-t0) up to 1e4; beyond that construction throws
// NumericalOverflow.
//
// The boundary layers are held as the algebraically equivalent two-sided
// factorization of the printed sinh/cosh form:
//   u(t)   = -u1 sin(w t) - (q+s0) sh(th(TD-tau))/sh(th TD)
//                         - (q+sf) sh(th tau)/sh(th TD)
//   e_s(t) =  e1 cos(w t) + (q+s0)/th ch(th(TD-tau))/sh(th TD)
//                         - (q+sf)/th ch(th tau)/sh(th TD)
// with tau = t-t0, q = beta/a, s0/sf the theta^2-weighted demand phases at
// the endpoints. Evaluating u at t0 and tf reproduces the transversality
// values -beta/a - d_s(t0) and -beta/a - d_s(tf).
class FiniteHorizonSolution {
 public:
  FiniteHorizonSolution(const DemandProfile& demand, const GenerationCostParams& g,
                        double gamma, double e0_mwh, double t0_hours, double tf_hours);

  double u_at(double t_hours) const;
  double e_at(double t_hours) const;

  double t0() const { return t0_; }
  double tf() const { return tf_; }
  double gamma() const { return gamma_; }
  double beta() const { return beta_; }
  double theta() const { return theta_; }
  double u1() const { return u1_; }
  double e1() const { return e1_; }
  double e0() const { return e0_; }
  double omega0() const { return omega0_; }

 private:
  double t0_, tf_, gamma_, beta_, theta_, omega0_, d1_, e0_;
  double u1_, e1_;
  double q_;       // beta/a
  double s0_, sf_; // d1*theta^2/(theta^2+omega0^2) * sin(omega0*{t0,tf})
  double den_;     // 1 - exp(-2*theta*(tf-t0))
};

struct CostBreakdown {
  double j_g;               // average generation cost (USD/hour)
  double j_s;               // average storage cost (USD/hour)
  double j_total;           // j_g + j_s
  double baseline;          // J(0), no storage
  double savings;           // baseline - j_total
  double savings_fraction;  // savings / baseline
};

// J_g = (a/4)(d1-u1)^2 + (a/2)d0^2 + b*d0.
double avg_generation_cost(const DemandProfile& demand, const GenerationCostParams& g,
                           double u1_mw);

// Breakdown of the no-storage operating point: j_g = baseline, j_s = 0.
CostBreakdown baseline_cost(const DemandProfile& demand, const GenerationCostParams& g);

// J_s = Phi(2*e1/C) * C * rho * omega0 / (2*pi); zero when e1 = 0.
double avg_storage_cost(const SinusoidalPolicy& policy, double capacity_mwh,
                        const StorageTech& tech);

// Assembles the cost breakdown at penalty gamma and capacity C, checking the
// depth and rate feasibility of the resulting policy. The reference energy is
// C/2 so the symmetric swing stays inside [0, C].
CostBreakdown total_cost(const DemandProfile& demand, const GenerationCostParams& g,
                         const StorageTech& tech, double gamma, double capacity_mwh);

// T_ls = Phi(2*e1/C)^-1 * 2*pi/omega0; +infinity when e1 = 0.
double lifespan(const SinusoidalPolicy& policy, double capacity_mwh,
                const StorageTech& tech);

}  // namespace sarb
