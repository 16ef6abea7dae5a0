#include "sarb/degradation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace sarb {

namespace {

// Phi without the (0,1] domain clamp, for finite differences near the
// interval edges.
double phi_raw(const DegradationCurve& c, double y) {
  const double denom = c.k1 * std::pow(y, c.k2) + c.k3;
  if (std::isinf(denom)) return 0.0;
  return 1.0 / denom;
}

double phi_over_y(const DegradationCurve& c, double y) { return phi_raw(c, y) / y; }

// g(y) = y/Phi(y) = k1*y^(k2+1) + k3*y and its derivative. (Phi/y)' has the
// sign of -g', so stationarity of Phi/y reduces to a root of g'.
double g_prime(const DegradationCurve& c, double y) {
  return c.k1 * (c.k2 + 1.0) * std::pow(y, c.k2) + c.k3;
}

}  // namespace

double CycleSet::total_weight() const {
  double s = 0.0;
  for (const auto& c : cycles) s += c.weight;
  return s;
}

double CycleSet::total_weighted_depth() const {
  double s = 0.0;
  for (const auto& c : cycles) s += c.weight * c.depth;
  return s;
}

double phi_over_y_prime(const DegradationCurve& curve, double y) {
  const double g = curve.k1 * std::pow(y, curve.k2 + 1.0) + curve.k3 * y;
  return -g_prime(curve, y) / (g * g);
}

double phi(const DegradationCurve& curve, double y) {
  if (!(y > 0.0 && y <= 1.0)) throw DomainError("phi: depth must be in (0,1]");
  const double denom = curve.k1 * std::pow(y, curve.k2) + curve.k3;
  if (!(denom > 0.0)) throw DomainError("phi: k1*y^k2 + k3 must be > 0");
  return 1.0 / denom;
}

double phi_inverse(const DegradationCurve& curve, double loss) {
  const double phi1 = phi(curve, 1.0);
  if (!(loss > 0.0 && loss <= phi1 * (1.0 + 1e-12)))
    throw DomainError("phi_inverse: loss must be in (0, Phi(1)]");
  if (loss >= phi1) return 1.0;

  // Bisect on t = log10(y); Phi is monotone increasing so the bracket holds
  // for any magnitude of loss.
  double lo = -300.0, hi = 0.0;
  for (int it = 0; it < 120; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (phi_raw(curve, std::pow(10.0, mid)) < loss)
      lo = mid;
    else
      hi = mid;
  }
  double y = std::pow(10.0, 0.5 * (lo + hi));

  // Newton polish on f(y) = 1/Phi(y) - 1/loss = k1*y^k2 + k3 - 1/loss.
  for (int it = 0; it < 4; ++it) {
    const double f = curve.k1 * std::pow(y, curve.k2) + curve.k3 - 1.0 / loss;
    const double df = curve.k1 * curve.k2 * std::pow(y, curve.k2 - 1.0);
    if (df == 0.0) break;
    const double step = f / df;
    const double yn = y - step;
    if (!(yn > 0.0 && yn <= 1.0)) break;
    y = yn;
    if (std::abs(step) <= 1e-15 * y) break;
  }
  return y;
}

double stationary_depth(const DegradationCurve& curve) {
  constexpr double y_min = 1e-6;

  // Reject clearly concave Phi/y before trusting the bracketed search.
  constexpr int n_scan = 33;
  constexpr double h = 1e-4;
  for (int i = 0; i < n_scan; ++i) {
    const double y = 1e-3 + (1.0 - 2e-3) * static_cast<double>(i) / (n_scan - 1);
    const double f = phi_over_y(curve, y);
    const double f2 =
        (phi_over_y(curve, y + h) - 2.0 * f + phi_over_y(curve, y - h)) / (h * h);
    if (f2 < -1e-6 * std::abs(f))
      throw AssumptionViolated("stationary_depth: (Phi(y)/y)'' < 0 on the search grid");
  }

  double lo = y_min, hi = 1.0;
  double flo = g_prime(curve, lo), fhi = g_prime(curve, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) {
    // Monotone Phi/y: return the boundary that minimizes it.
    return phi_over_y(curve, lo) <= phi_over_y(curve, hi) ? lo : hi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = g_prime(curve, mid);
    if (fmid == 0.0) return mid;
    if (fmid * flo > 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-14 * hi) break;
  }
  return 0.5 * (lo + hi);
}

bool check_stress_convexity(const DegradationCurve& curve, int n_grid) {
  if (n_grid < 10) throw DomainError("check_stress_convexity: n_grid must be >= 10");
  constexpr double h = 1e-4;
  for (int i = 0; i < n_grid; ++i) {
    const double y = 1e-3 + (1.0 - 1e-3) * static_cast<double>(i) / (n_grid - 1);
    const double pm = phi_raw(curve, y - h);
    const double p0 = phi_raw(curve, y);
    const double pp = phi_raw(curve, y + h);
    if (!(p0 > 0.0) || !std::isfinite(p0)) return false;
    if (!(pp > pm)) return false;  // Phi must be increasing
    const double f = p0 / y;
    const double f2 = (pp / (y + h) - 2.0 * f + pm / (y - h)) / (h * h);
    // Strong convexity of Phi/y; the margin keeps flat curves (f'' = 0)
    // deterministically out despite finite-difference roundoff.
    if (!(f2 > 1e-6 * std::abs(f))) return false;
  }
  return true;
}

CycleSet rainflow(const Trajectory& e, double capacity_mwh) {
  if (!(capacity_mwh > 0.0)) throw DomainError("rainflow: capacity must be > 0");
  const double hi_bound = capacity_mwh * (1.0 + 1e-12);
  for (double v : e.values)
    if (v < -1e-12 * capacity_mwh || v > hi_bound)
      throw DomainError("rainflow: trajectory sample outside [0, capacity]");

  // Turning points: strict sign change of the first difference; plateaus
  // collapse to a single point. Endpoints are always kept.
  std::vector<double> tp;
  tp.push_back(e.values.front());
  int last_sign = 0;
  for (std::size_t k = 1; k < e.values.size(); ++k) {
    const double d = e.values[k] - tp.back();
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (sign == last_sign)
      tp.back() = e.values[k];  // still heading the same way, extend the extreme
    else
      tp.push_back(e.values[k]);
    last_sign = sign;
  }

  CycleSet out;
  const auto emit = [&](double range, double weight) {
    if (range > 0.0) out.cycles.push_back({std::min(range / capacity_mwh, 1.0), weight});
  };

  // ASTM E1049 four-point rule on the turning-point deque: a range Y bounded
  // by its neighbour X >= Y is a full cycle unless it contains the start
  // point, in which case it counts as a half cycle.
  std::deque<double> s(tp.begin(), tp.end());
  std::size_t i = 2;
  while (i < s.size()) {
    while (i >= 2) {
      const double x = std::abs(s[i] - s[i - 1]);
      const double y = std::abs(s[i - 1] - s[i - 2]);
      if (x < y) break;
      if (i == 2) {
        emit(y, 0.5);
        s.pop_front();
        --i;
      } else {
        emit(y, 1.0);
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i - 2),
                s.begin() + static_cast<std::ptrdiff_t>(i));
        i -= 2;
      }
    }
    ++i;
  }
  // Residual: each remaining range is a half cycle.
  for (std::size_t k = 1; k < s.size(); ++k) emit(std::abs(s[k] - s[k - 1]), 0.5);
  return out;
}

double storage_cost(const CycleSet& cycles, double capacity_mwh, double rho,
                    const DegradationCurve& curve) {
  if (!(capacity_mwh > 0.0)) throw DomainError("storage_cost: capacity must be > 0");
  double total = 0.0;
  for (const auto& c : cycles.cycles)
    total += c.weight * phi(curve, c.depth) * capacity_mwh * rho;
  return total;
}

}  // namespace sarb
