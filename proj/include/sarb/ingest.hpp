#pragma once

// Demand data ingestion: CSV parsing and DC + first-harmonic fitting.

#include <iosfwd>
#include <vector>

#include "sarb/model.hpp"

namespace sarb {

struct DemandSeries {
  std::vector<double> hours;      // uniform timestamps (hours)
  std::vector<double> demand_mw;  // all >= 0

  DemandSeries(std::vector<double> hours_, std::vector<double> demand_mw_);

  double dt() const { return hours[1] - hours[0]; }
  double span() const { return hours.back() - hours.front(); }
};

// CSV with header `timestamp,demand_mw`; timestamps either ISO-8601
// (YYYY-MM-DD[T ]HH:MM[:SS]) or fractional hours, strict dot decimals.
// Rows may arrive in any order and are sorted by time.
DemandSeries parse_csv(std::istream& source);

struct HarmonicFit {
  DemandProfile profile;
  double residual_rms;  // MW
  double sin_coeff;     // A in d0 + A*sin + B*cos
  double cos_coeff;     // B
};

// Least-squares fit of d(t) ~ d0 + A*sin(omega0*t) + B*cos(omega0*t) with
// omega0 = 2*pi/period. d1 = sqrt(A^2+B^2); the phase is discarded since the
// downstream formulas depend only on (d0, d1, omega0). DegenerateFit if the
// series does not span one period; DomainError if the fitted d1 exceeds d0.
HarmonicFit fit_first_harmonic(const DemandSeries& series, double period_hours);

}  // namespace sarb
