#include "sarb/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "sarb/degradation.hpp"
#include "sarb/ingest.hpp"
#include "sarb/oracle.hpp"

namespace sarb::cli {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json breakdown_json(const CostBreakdown& c) {
  return json{{"j_g", c.j_g},
              {"j_s", c.j_s},
              {"j_total", c.j_total},
              {"baseline", c.baseline},
              {"savings", c.savings},
              {"savings_fraction", c.savings_fraction}};
}

int classify(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (dynamic_cast<const InfeasiblePlanning*>(&e) ||
      dynamic_cast<const InfeasibleOperation*>(&e))
    return kInfeasible;
  return kValidationError;
}

}  // namespace

const char* const kSweepCsvHeader =
    "omega0_rad_per_hr,j_g,j_s,j_total,baseline,savings_fraction,returning_rate,"
    "c_star_mwh,y_star,gamma_star,binding";

DemandProfile RunConfig::demand() const {
  if (csv_path.empty()) return DemandProfile(d0, d1, omega0);
  std::ifstream in(csv_path);
  if (!in) throw ParseError("cannot open demand CSV '" + csv_path + "'");
  const DemandSeries series = parse_csv(in);
  return fit_first_harmonic(series, period_hours).profile;
}

GenerationCostParams RunConfig::generation() const { return {a, b}; }

StorageTech RunConfig::tech() const {
  return StorageTech(epsilon, rho, tmax_years * kHoursPerYear,
                     DegradationCurve{k1, k2, k3});
}

double returning_rate(const PlanningSolution& s, const StorageTech& tech) {
  if (!s.storage_used || s.c_star <= 0.0) return 0.0;
  const double t_ls = lifespan(s.policy, s.c_star, tech);
  return s.costs.savings * t_ls / (tech.rho * s.c_star);
}

int run_fit_demand(const std::string& csv_path, double period_hours, std::ostream& out,
                   std::ostream& err) {
  try {
    std::ifstream in(csv_path);
    if (!in) throw ParseError("cannot open demand CSV '" + csv_path + "'");
    const DemandSeries series = parse_csv(in);
    const HarmonicFit fit = fit_first_harmonic(series, period_hours);
    json j{{"d0", fit.profile.d0},
           {"d1", fit.profile.d1},
           {"omega0", fit.profile.omega0},
           {"residual_rms", fit.residual_rms}};
    out << j.dump(2) << "\n";
    return kOk;
  } catch (const Error& e) {
    return classify(e, err);
  }
}

int run_plan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const DemandProfile demand = cfg.demand();
    const GenerationCostParams g = cfg.generation();
    const StorageTech tech = cfg.tech();
    const PlanningSolution s = solve(demand, g, tech);

    const double t_ls =
        s.storage_used ? lifespan(s.policy, s.c_star, tech)
                       : std::numeric_limits<double>::quiet_NaN();
    json j{{"storage_used", s.storage_used},
           {"y_star", s.y_star},
           {"c_star_mwh", s.c_star},
           {"binding", to_string(s.binding)},
           {"u1_mw", s.policy.u1},
           {"e1_mwh", s.policy.e1},
           {"e0_mwh", s.policy.e0},
           {"lifespan_years", s.storage_used ? json(t_ls / kHoursPerYear) : json()},
           {"returning_rate", returning_rate(s, tech)},
           {"demand", {{"d0", demand.d0}, {"d1", demand.d1}, {"omega0", demand.omega0}}}};
    j["gamma_star"] = s.storage_used ? json(s.gamma_star) : json();
    j.update(breakdown_json(s.costs));
    out << j.dump(2) << "\n";

    err << "planning solution (omega0 = " << demand.omega0 << " rad/h)\n";
    err << "  storage_used      " << (s.storage_used ? "yes" : "no") << "\n";
    err << "  binding           " << to_string(s.binding) << "\n";
    if (s.storage_used) {
      err << "  gamma*            " << s.gamma_star << " USD/(MWh^2 h)\n";
      err << "  y*                " << s.y_star << "\n";
      err << "  C*                " << s.c_star << " MWh\n";
      err << "  lifespan          " << t_ls / kHoursPerYear << " years\n";
    }
    err << "  J_g               " << s.costs.j_g << " USD/h\n";
    err << "  J_s               " << s.costs.j_s << " USD/h\n";
    err << "  baseline J(0)     " << s.costs.baseline << " USD/h\n";
    err << "  savings           " << s.costs.savings << " USD/h ("
        << 100.0 * s.costs.savings_fraction << "%)\n";
    return kOk;
  } catch (const Error& e) {
    return classify(e, err);
  }
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.omega_lo > 0.0) || !(cfg.omega_hi > cfg.omega_lo))
      throw DomainError("sweep: need 0 < omega_lo < omega_hi");
    if (cfg.sweep_points < 2) throw DomainError("sweep: need at least 2 points");
    const GenerationCostParams g = cfg.generation();
    const StorageTech tech = cfg.tech();

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.out_path.empty()) {
      file.open(cfg.out_path);
      if (!file) throw ParseError("cannot open output file '" + cfg.out_path + "'");
      sink = &file;
    }
    *sink << kSweepCsvHeader << "\n";

    const double log_ratio = std::log(cfg.omega_hi / cfg.omega_lo);
    int infeasible_rows = 0;
    for (int i = 0; i < cfg.sweep_points; ++i) {
      const double w0 =
          cfg.omega_lo *
          std::exp(log_ratio * static_cast<double>(i) / (cfg.sweep_points - 1));
      const DemandProfile demand(cfg.d0, cfg.d1, w0);
      try {
        const PlanningSolution s = solve(demand, g, tech);
        *sink << fmt(w0) << ',' << fmt(s.costs.j_g) << ',' << fmt(s.costs.j_s) << ','
              << fmt(s.costs.j_total) << ',' << fmt(s.costs.baseline) << ','
              << fmt(s.costs.savings_fraction) << ',' << fmt(returning_rate(s, tech))
              << ',' << fmt(s.c_star) << ',' << fmt(s.y_star) << ','
              << fmt(s.storage_used ? s.gamma_star
                                    : std::numeric_limits<double>::quiet_NaN())
              << ',' << to_string(s.binding) << "\n";
      } catch (const InfeasiblePlanning& e) {
        ++infeasible_rows;
        *sink << fmt(w0) << ",nan,nan,nan,nan,nan,nan,nan,nan,nan,infeasible\n";
        err << "omega0 = " << w0 << ": " << e.what() << "\n";
      }
    }
    if (infeasible_rows > 0)
      err << infeasible_rows << " of " << cfg.sweep_points << " rows infeasible\n";
    return kOk;
  } catch (const Error& e) {
    return classify(e, err);
  }
}

namespace {

struct Check {
  std::string name;
  bool pass;
  double measured;
  double threshold;
  std::string note;
};

void append(std::vector<Check>& checks, const std::string& name, double measured,
            double threshold, const std::string& note = "") {
  checks.push_back({name, measured <= threshold, measured, threshold, note});
}

}  // namespace

int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<Check> checks;
  try {
    const DemandProfile demand = cfg.demand();
    const GenerationCostParams g = cfg.generation();

    // Curve convexity; everything downstream assumes it.
    StorageTech tech(cfg.epsilon, cfg.rho, cfg.tmax_years * kHoursPerYear,
                     DegradationCurve{cfg.k1, cfg.k2, cfg.k3});
    checks.push_back({"stress_curve_convexity", true, 0.0, 0.0, "checked at construction"});

    const DegradationCurve& curve = tech.curve;

    // Phi inverse round trip on a depth grid.
    double rt = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double y = 0.1 * i;
      rt = std::max(rt, std::abs(phi_inverse(curve, phi(curve, y)) - y));
    }
    append(checks, "phi_roundtrip_max_abs", rt, 1e-9);

    // Stationary depth solves (Phi/y)' = 0.
    const double y_s = stationary_depth(curve);
    const double h = 1e-6;
    const double resid = std::abs((phi(curve, y_s + h) / (y_s + h) -
                                   phi(curve, y_s - h) / (y_s - h)) /
                                  (2.0 * h));
    append(checks, "stationary_depth_residual", resid, 1e-8);

    // Closed-form policy against the discrete optimum, interior window.
    {
      const double gamma = 1e-3;
      const double t0 = 0.0, tf = 10.0 * demand.period_hours();
      const int n = static_cast<int>(std::ceil((tf - t0) / 0.01));
      const auto p = DiscreteProblem::from_profile(demand, g, gamma, 0.0, t0, tf, n);
      const QpSolution sol = solve_qp(p);
      const SinusoidalPolicy pol = infinite_policy(demand, g.a, gamma, 0.0);
      const TrajectoryErrors e = compare(pol, sol, 0.5);
      append(checks, "policy_vs_qp_sup_rel_u", e.sup_rel_u, 1e-3);
      append(checks, "policy_vs_qp_sup_rel_e", e.sup_rel_e, 1e-3);

      // First-order optimality of the discrete solution.
      const double dec = perturbation_audit(p, sol.u, sol.e.values[0], 500, 1e-3,
                                            cfg.seed);
      append(checks, "qp_perturbation_max_decrease", dec,
             1e-9 * std::abs(sol.objective));
    }

    // Finite-horizon closed form against the QP, boundary layers included.
    {
      const double gamma = 8.6e-5;
      const double t0 = 0.0, tf = 10.0 * demand.period_hours();
      const int n = static_cast<int>(std::ceil((tf - t0) / 0.01));
      const auto p = DiscreteProblem::from_profile(demand, g, gamma, 0.0, t0, tf, n);
      const QpSolution sol = solve_qp(p);
      const FiniteHorizonSolution fh(demand, g, gamma, 0.0, t0, tf);
      const TrajectoryErrors e = compare(fh, sol);
      append(checks, "finite_horizon_vs_qp_sup_rel_u", e.sup_rel_u, 1e-2);
      append(checks, "finite_horizon_vs_qp_sup_rel_e", e.sup_rel_e, 1e-2);

      const double beta = g.a * demand.d0 + g.b;
      const double tv0 = std::abs(fh.u_at(t0) -
                                  (-beta / g.a - demand.d1 * std::sin(demand.omega0 * t0)));
      const double tvf = std::abs(fh.u_at(tf) -
                                  (-beta / g.a - demand.d1 * std::sin(demand.omega0 * tf)));
      append(checks, "transversality_rel", std::max(tv0, tvf) / (beta / g.a), 1e-8);
    }

    // KKT solution against exhaustive grid search.
    {
      const GridVerifyResult r = grid_verify(demand, g, tech, 300, 300);
      append(checks, "grid_vs_kkt_objective_gap", r.gap, 1e-3);
      const PlanningSolution s = solve(demand, g, tech);
      const double ydist = s.storage_used ? std::abs(r.best_y - s.y_star) : 0.0;
      append(checks, "grid_vs_kkt_y_distance", ydist, r.y_cell * (1.0 + 1e-12));
    }

    // Rainflow on the sampled closed-form trajectory against the analytic
    // per-cycle storage cost.
    {
      const PlanningSolution s = solve(demand, g, tech);
      if (s.storage_used) {
        const int periods = 5;
        const int per_period = 256;
        const double dt = s.policy.omega0 > 0.0
                              ? demand.period_hours() / per_period
                              : 1.0;
        std::vector<double> e(static_cast<std::size_t>(periods * per_period) + 1);
        for (std::size_t k = 0; k < e.size(); ++k)
          e[k] = s.policy.e_at(static_cast<double>(k) * dt);
        const CycleSet cs = rainflow(Trajectory(0.0, dt, std::move(e)), s.c_star);
        const double cost = storage_cost(cs, s.c_star, tech.rho, curve);
        const double analytic = s.costs.j_s * periods * demand.period_hours();
        append(checks, "rainflow_vs_analytic_rel",
               std::abs(cost - analytic) / analytic, 1e-4);
        append(checks, "rainflow_cycle_count_abs",
               std::abs(cs.total_weight() - periods), 1e-9);
      }
    }
  } catch (const AssumptionViolated& e) {
    checks.push_back({"stress_curve_convexity", false, 1.0, 0.0, e.what()});
  } catch (const Error& e) {
    checks.push_back({"setup", false, 1.0, 0.0, e.what()});
  }

  bool all_pass = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    json j{{"name", c.name}, {"pass", c.pass}, {"measured", c.measured},
           {"threshold", c.threshold}};
    if (!c.note.empty()) j["note"] = c.note;
    arr.push_back(j);
    err << (c.pass ? "[pass] " : "[FAIL] ") << c.name << " (measured " << c.measured
        << ", threshold " << c.threshold << ")" << (c.note.empty() ? "" : " " + c.note)
        << "\n";
  }
  out << json{{"all_pass", all_pass}, {"checks", arr}}.dump(2) << "\n";
  return all_pass ? kOk : kVerificationFailure;
}

}  // namespace sarb::cli
