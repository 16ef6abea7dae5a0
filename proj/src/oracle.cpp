#include "sarb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace sarb {

namespace {

void check_resolution(double dt, double a, double gamma) {
  const double theta = std::sqrt(gamma / a);
  if (dt * theta > 0.1)
    throw DomainError(
        "DiscreteProblem: dt*theta > 0.1, refine the grid (increase n_steps) "
        "for a meaningful comparison");
}

TrajectoryErrors compare_impl(const QpSolution& numeric,
                              const std::function<double(double)>& u_ref,
                              const std::function<double(double)>& e_ref,
                              double window) {
  if (numeric.u.size() + 1 != numeric.e.size())
    throw GridMismatch("compare: u must have one sample fewer than e");
  if (numeric.u.dt != numeric.e.dt ||
      std::abs(numeric.u.t_start - (numeric.e.t_start + 0.5 * numeric.u.dt)) >
          1e-9 * numeric.u.dt)
    throw GridMismatch("compare: u samples must sit at the midpoints of the e grid");
  if (!(window > 0.0 && window <= 1.0))
    throw DomainError("compare: window fraction must be in (0,1]");

  const double t0 = numeric.e.t_start;
  const double tf = numeric.e.time_at(numeric.e.size() - 1);
  const double margin = 0.5 * (1.0 - window) * (tf - t0);
  const double lo = t0 + margin, hi = tf - margin;

  TrajectoryErrors err{0.0, 0.0, 0.0, 0.0};
  double sup_u = 0.0, sup_e = 0.0, l2u = 0.0, l2e = 0.0, l2u_ref = 0.0, l2e_ref = 0.0;
  for (std::size_t k = 0; k < numeric.u.size(); ++k) {
    const double t = numeric.u.time_at(k);
    if (t < lo || t > hi) continue;
    const double ref = u_ref(t);
    const double d = numeric.u.values[k] - ref;
    sup_u = std::max(sup_u, std::abs(ref));
    err.sup_rel_u = std::max(err.sup_rel_u, std::abs(d));
    l2u += d * d;
    l2u_ref += ref * ref;
  }
  for (std::size_t k = 0; k < numeric.e.size(); ++k) {
    const double t = numeric.e.time_at(k);
    if (t < lo || t > hi) continue;
    const double ref = e_ref(t);
    const double d = numeric.e.values[k] - ref;
    sup_e = std::max(sup_e, std::abs(ref));
    err.sup_rel_e = std::max(err.sup_rel_e, std::abs(d));
    l2e += d * d;
    l2e_ref += ref * ref;
  }
  if (sup_u > 0.0) err.sup_rel_u /= sup_u;
  if (sup_e > 0.0) err.sup_rel_e /= sup_e;
  err.l2_rel_u = l2u_ref > 0.0 ? std::sqrt(l2u / l2u_ref) : std::sqrt(l2u);
  err.l2_rel_e = l2e_ref > 0.0 ? std::sqrt(l2e / l2e_ref) : std::sqrt(l2e);
  return err;
}

}  // namespace

DiscreteProblem DiscreteProblem::from_profile(const DemandProfile& demand,
                                              const GenerationCostParams& g, double gamma,
                                              double e0_mwh, double t0_hours,
                                              double tf_hours, int n_steps) {
  if (!(tf_hours > t0_hours)) throw DomainError("DiscreteProblem: tf must be > t0");
  if (n_steps < 2) throw DomainError("DiscreteProblem: n_steps must be >= 2");
  if (!(gamma > 0.0)) throw DomainError("DiscreteProblem: gamma must be > 0");
  const double periods = (tf_hours - t0_hours) * demand.omega0 / (2.0 * M_PI);
  if (static_cast<double>(n_steps) < 16.0 * periods)
    throw DomainError("DiscreteProblem: need at least 16 steps per demand period");
  DiscreteProblem p;
  p.t0 = t0_hours;
  p.tf = tf_hours;
  p.n_steps = n_steps;
  p.dt = (tf_hours - t0_hours) / n_steps;
  check_resolution(p.dt, g.a, gamma);
  p.demand.resize(static_cast<std::size_t>(n_steps));
  for (int k = 0; k < n_steps; ++k)
    p.demand[static_cast<std::size_t>(k)] = demand.at(p.t0 + (k + 0.5) * p.dt);
  p.a = g.a;
  p.b = g.b;
  p.gamma = gamma;
  p.e0 = e0_mwh;
  return p;
}

DiscreteProblem DiscreteProblem::from_samples(std::vector<double> demand_mw,
                                              const GenerationCostParams& g, double gamma,
                                              double e0_mwh, double t0_hours,
                                              double tf_hours) {
  if (!(tf_hours > t0_hours)) throw DomainError("DiscreteProblem: tf must be > t0");
  if (demand_mw.size() < 2) throw DomainError("DiscreteProblem: need >= 2 samples");
  if (!(gamma > 0.0)) throw DomainError("DiscreteProblem: gamma must be > 0");
  DiscreteProblem p;
  p.t0 = t0_hours;
  p.tf = tf_hours;
  p.n_steps = static_cast<int>(demand_mw.size());
  p.dt = (tf_hours - t0_hours) / p.n_steps;
  check_resolution(p.dt, g.a, gamma);
  p.demand = std::move(demand_mw);
  p.a = g.a;
  p.b = g.b;
  p.gamma = gamma;
  p.e0 = e0_mwh;
  return p;
}

QpSolution solve_qp(const DiscreteProblem& p) {
  const int n = p.n_steps;
  const std::size_t m = static_cast<std::size_t>(n) + 1;  // unknown node energies
  const double c = p.a / p.dt;
  const double gdt = p.gamma * p.dt;

  // Stationarity of the objective in the node energies. Interior rows are
  // the discrete Euler-Lagrange equation
  //   a*(d_k - d_{k-1} + u_k - u_{k-1})/dt = gamma*(e_k - e0),
  // and the boundary rows encode the free endpoints: with the half penalty
  // weights they reproduce a*(d+u) + b = -lambda at a half step inside each
  // end, where the costate lambda vanishes.
  std::vector<double> diag(m), rhs(m);
  diag[0] = c + 0.5 * gdt;
  rhs[0] = p.a * p.demand[0] + p.b + 0.5 * gdt * p.e0;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    diag[j] = 2.0 * c + gdt;
    rhs[j] = p.a * (p.demand[j] - p.demand[j - 1]) + gdt * p.e0;
  }
  diag[m - 1] = c + 0.5 * gdt;
  rhs[m - 1] = -(p.a * p.demand[static_cast<std::size_t>(n) - 1] + p.b) + 0.5 * gdt * p.e0;

  // Thomas elimination; the matrix is SPD for gamma > 0 (off-diagonals -c).
  std::vector<double> cp(m - 1), dp(m);
  double pivot = diag[0];
  if (!(pivot > 0.0)) throw SingularSystem("solve_qp: nonpositive pivot");
  cp[0] = -c / pivot;
  dp[0] = rhs[0] / pivot;
  for (std::size_t j = 1; j < m; ++j) {
    pivot = diag[j] + c * cp[j - 1];
    if (!(pivot > 0.0)) throw SingularSystem("solve_qp: nonpositive pivot");
    if (j < m - 1) cp[j] = -c / pivot;
    dp[j] = (rhs[j] + c * dp[j - 1]) / pivot;
  }
  std::vector<double> e_nodes(m);
  e_nodes[m - 1] = dp[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) e_nodes[j] = dp[j] - cp[j] * e_nodes[j + 1];

  std::vector<double> u(static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < u.size(); ++k)
    u[k] = (e_nodes[k + 1] - e_nodes[k]) / p.dt;

  // Rebuild the energies through the exact dynamics so that
  // e[k+1] - e[k] - u[k]*dt == 0 holds bit-exactly.
  std::vector<double> e(m);
  e[0] = e_nodes[0];
  for (std::size_t k = 0; k < u.size(); ++k) e[k + 1] = e[k] + u[k] * p.dt;

  QpSolution sol{Trajectory(p.t0 + 0.5 * p.dt, p.dt, std::move(u)),
                 Trajectory(p.t0, p.dt, std::move(e)), 0.0};
  sol.objective = objective(p, sol.u.values, sol.e.values[0]);
  return sol;
}

double objective(const DiscreteProblem& p, const std::vector<double>& u, double e_init) {
  if (u.size() != static_cast<std::size_t>(p.n_steps))
    throw GridMismatch("objective: control size must equal n_steps");
  double j = 0.0;
  double e = e_init;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double w = (k == 0) ? 0.5 : 1.0;
    const double dev = e - p.e0;
    j += w * 0.5 * p.gamma * dev * dev * p.dt;
    const double supply = p.demand[k] + u[k];
    j += (0.5 * p.a * supply * supply + p.b * supply) * p.dt;
    e += u[k] * p.dt;
  }
  const double dev = e - p.e0;
  j += 0.5 * 0.5 * p.gamma * dev * dev * p.dt;
  return j;
}

double perturbation_audit(const DiscreteProblem& p, const Trajectory& u, double e_init,
                          int n_trials, double magnitude, unsigned seed) {
  if (n_trials < 1) throw DomainError("perturbation_audit: n_trials must be >= 1");
  const double j0 = objective(p, u.values, e_init);

  double u_scale = 0.0;
  for (double v : u.values) u_scale = std::max(u_scale, std::abs(v));
  double e_scale = 0.0, e = e_init;
  for (double v : u.values) {
    e += v * u.dt;
    e_scale = std::max(e_scale, std::abs(e - p.e0));
  }
  if (u_scale == 0.0) u_scale = 1.0;
  if (e_scale == 0.0) e_scale = 1.0;

  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, u.values.size());
  std::uniform_int_distribution<int> coin(0, 1);

  std::vector<double> u_try = u.values;
  double max_decrease = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < n_trials; ++t) {
    const std::size_t idx = pick(rng);
    const double sign = coin(rng) == 0 ? 1.0 : -1.0;
    double j_try;
    if (idx == u.values.size()) {
      j_try = objective(p, u_try, e_init + sign * magnitude * e_scale);
    } else {
      const double saved = u_try[idx];
      u_try[idx] = saved + sign * magnitude * u_scale;
      j_try = objective(p, u_try, e_init);
      u_try[idx] = saved;
    }
    max_decrease = std::max(max_decrease, j0 - j_try);
  }
  return max_decrease;
}

TrajectoryErrors compare(const SinusoidalPolicy& analytic, const QpSolution& numeric,
                         double window) {
  return compare_impl(
      numeric, [&](double t) { return analytic.u_at(t); },
      [&](double t) { return analytic.e_at(t); }, window);
}

TrajectoryErrors compare(const FiniteHorizonSolution& analytic, const QpSolution& numeric) {
  return compare_impl(
      numeric, [&](double t) { return analytic.u_at(t); },
      [&](double t) { return analytic.e_at(t); }, 1.0);
}

}  // namespace sarb
