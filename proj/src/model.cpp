#include "sarb/model.hpp"

#include <cmath>

#include "sarb/degradation.hpp"

namespace sarb {

DemandProfile::DemandProfile(double d0_, double d1_, double omega0_)
    : d0(d0_), d1(d1_), omega0(omega0_) {
  if (!(d0 >= 0.0)) throw DomainError("DemandProfile: d0 must be >= 0");
  if (!(d1 >= 0.0 && d1 <= d0)) throw DomainError("DemandProfile: need 0 <= d1 <= d0");
  if (!(omega0 > 0.0)) throw DomainError("DemandProfile: omega0 must be > 0");
}

double DemandProfile::at(double t_hours) const {
  return d0 + d1 * std::sin(omega0 * t_hours);
}

double DemandProfile::period_hours() const { return 2.0 * M_PI / omega0; }

GenerationCostParams::GenerationCostParams(double a_, double b_) : a(a_), b(b_) {
  if (!(a > 0.0)) throw DomainError("GenerationCostParams: a must be > 0");
  if (!(b > 0.0)) throw DomainError("GenerationCostParams: b must be > 0");
}

StorageTech::StorageTech(double epsilon_, double rho_, double t_ls_max_hours,
                         const DegradationCurve& curve_)
    : epsilon(epsilon_), rho(rho_), t_ls_max(t_ls_max_hours), curve(curve_) {
  if (!(epsilon > 0.0)) throw DomainError("StorageTech: epsilon must be > 0");
  if (!(rho > 0.0)) throw DomainError("StorageTech: rho must be > 0");
  if (!(t_ls_max > 0.0)) throw DomainError("StorageTech: t_ls_max must be > 0");
  if (!check_stress_convexity(curve, 64))
    throw AssumptionViolated(
        "StorageTech: stress curve violates the strong-convexity assumption "
        "((Phi(y)/y)'' > 0 and Phi increasing on (0,1])");
}

StorageSpec::StorageSpec(double capacity_, double reference_energy_)
    : capacity(capacity_), reference_energy(reference_energy_) {
  if (!(capacity >= 0.0)) throw DomainError("StorageSpec: capacity must be >= 0");
  if (!(reference_energy >= 0.0 && reference_energy <= capacity))
    throw DomainError("StorageSpec: need 0 <= reference_energy <= capacity");
}

Trajectory::Trajectory(double t_start_, double dt_, std::vector<double> values_)
    : t_start(t_start_), dt(dt_), values(std::move(values_)) {
  if (!(dt > 0.0)) throw DomainError("Trajectory: dt must be > 0");
  if (values.size() < 2) throw DomainError("Trajectory: need at least 2 samples");
}

double generation_cost_rate(double p_mw, const GenerationCostParams& g) {
  return 0.5 * g.a * p_mw * p_mw + g.b * p_mw;
}

Trajectory integrate_storage(double e_init_mwh, const Trajectory& u) {
  std::vector<double> e(u.size() + 1);
  e[0] = e_init_mwh;
  for (std::size_t k = 0; k < u.size(); ++k) e[k + 1] = e[k] + u.values[k] * u.dt;
  return Trajectory(u.t_start, u.dt, std::move(e));
}

}  // namespace sarb
