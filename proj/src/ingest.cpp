#include "sarb/ingest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numeric>
#include <sstream>
#include <string>

namespace sarb {

namespace {

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(out);
}

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
long days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const long era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return era * 146097 + static_cast<long>(doe) - 719468;
}

// ISO-8601 "YYYY-MM-DD[T ]HH:MM[:SS]" to absolute hours; false if the field
// is not shaped like a date.
bool parse_iso8601_hours(const std::string& s, double& out) {
  int y, mo, d, h, mi;
  double sec = 0.0;
  char sep;
  std::istringstream in(s);
  in >> y;
  if (!in || in.get() != '-') return false;
  in >> mo;
  if (!in || in.get() != '-') return false;
  in >> d;
  sep = static_cast<char>(in.get());
  if (!in || (sep != 'T' && sep != ' ')) return false;
  in >> h;
  if (!in || in.get() != ':') return false;
  in >> mi;
  if (!in) return false;
  if (in.peek() == ':') {
    in.get();
    in >> sec;
    if (!in) return false;
  }
  in >> std::ws;
  if (!in.eof()) return false;
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 || mi > 59)
    return false;
  out = static_cast<double>(days_from_civil(y, mo, d)) * 24.0 + h + mi / 60.0 + sec / 3600.0;
  return true;
}

}  // namespace

DemandSeries::DemandSeries(std::vector<double> hours_, std::vector<double> demand_mw_)
    : hours(std::move(hours_)), demand_mw(std::move(demand_mw_)) {
  if (hours.size() != demand_mw.size())
    throw ParseError("DemandSeries: timestamp/demand length mismatch");
  if (hours.size() < 24) throw ParseError("DemandSeries: need at least 24 samples");
  const double step = hours[1] - hours[0];
  if (!(step > 0.0)) throw NonUniformSpacing("DemandSeries: nonincreasing timestamps");
  for (std::size_t i = 1; i < hours.size(); ++i) {
    const double d = hours[i] - hours[i - 1];
    if (std::abs(d - step) > 1e-6 * std::max(step, std::abs(d)))
      throw NonUniformSpacing("DemandSeries: nonuniform spacing at sample " +
                              std::to_string(i));
  }
  for (std::size_t i = 0; i < demand_mw.size(); ++i)
    if (!(demand_mw[i] >= 0.0))
      throw NegativeDemand("DemandSeries: negative demand at sample " + std::to_string(i));
}

DemandSeries parse_csv(std::istream& source) {
  std::string line;
  if (!std::getline(source, line)) throw ParseError("parse_csv: empty input");
  {
    std::string header = strip(line);
    header.erase(std::remove(header.begin(), header.end(), ' '), header.end());
    if (header != "timestamp,demand_mw")
      throw ParseError("parse_csv: expected header 'timestamp,demand_mw', got '" +
                       strip(line) + "'");
  }

  std::vector<std::pair<double, double>> rows;
  std::size_t lineno = 1;
  while (std::getline(source, line)) {
    ++lineno;
    const std::string t = strip(line);
    if (t.empty()) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      throw ParseError("parse_csv: row " + std::to_string(lineno) + ": missing comma");
    const std::string ts = strip(t.substr(0, comma));
    const std::string dm = strip(t.substr(comma + 1));
    if (dm.find(',') != std::string::npos)
      throw ParseError("parse_csv: row " + std::to_string(lineno) + ": too many columns");

    double hours;
    if (!parse_iso8601_hours(ts, hours) && !parse_double(ts, hours))
      throw ParseError("parse_csv: row " + std::to_string(lineno) +
                       ", column 1: bad timestamp '" + ts + "'");
    double demand;
    if (!parse_double(dm, demand))
      throw ParseError("parse_csv: row " + std::to_string(lineno) +
                       ", column 2: bad demand '" + dm + "'");
    if (demand < 0.0)
      throw NegativeDemand("parse_csv: row " + std::to_string(lineno) +
                           ": negative demand " + dm);
    rows.emplace_back(hours, demand);
  }
  std::sort(rows.begin(), rows.end());

  std::vector<double> hours(rows.size()), demand(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    hours[i] = rows[i].first;
    demand[i] = rows[i].second;
  }
  if (rows.size() < 24)
    throw ParseError("parse_csv: need at least 24 data rows, got " +
                     std::to_string(rows.size()));
  return DemandSeries(std::move(hours), std::move(demand));
}

HarmonicFit fit_first_harmonic(const DemandSeries& series, double period_hours) {
  if (!(period_hours > 0.0)) throw DomainError("fit_first_harmonic: period must be > 0");
  if (series.span() < period_hours * (1.0 - 1e-9))
    throw DegenerateFit("fit_first_harmonic: series spans " +
                        std::to_string(series.span()) + " h < one period of " +
                        std::to_string(period_hours) + " h");
  const double omega0 = 2.0 * M_PI / period_hours;

  // 3x3 normal equations for [1, sin(w t), cos(w t)], solved by Gaussian
  // elimination with partial pivoting.
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> rhs{};
  for (std::size_t i = 0; i < series.hours.size(); ++i) {
    const double t = series.hours[i] - series.hours.front();
    const std::array<double, 3> basis = {1.0, std::sin(omega0 * t), std::cos(omega0 * t)};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
      rhs[r] += basis[r] * series.demand_mw[i];
    }
  }
  std::array<int, 3> piv = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m[piv[r]][col]) > std::abs(m[piv[best]][col])) best = r;
    std::swap(piv[col], piv[best]);
    if (m[piv[col]][col] == 0.0)
      throw DegenerateFit("fit_first_harmonic: singular normal equations");
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[piv[r]][col] / m[piv[col]][col];
      for (int c = col; c < 3; ++c) m[piv[r]][c] -= f * m[piv[col]][c];
      rhs[piv[r]] -= f * rhs[piv[col]];
    }
  }
  std::array<double, 3> coeff{};
  for (int col = 2; col >= 0; --col) {
    double s = rhs[piv[col]];
    for (int c = col + 1; c < 3; ++c) s -= m[piv[col]][c] * coeff[c];
    coeff[col] = s / m[piv[col]][col];
  }

  const double d0 = coeff[0];
  const double d1 = std::hypot(coeff[1], coeff[2]);
  if (d1 > d0 * (1.0 + 1e-12))
    throw DomainError("fit_first_harmonic: fitted amplitude d1 = " + std::to_string(d1) +
                      " exceeds baseline d0 = " + std::to_string(d0));

  double ss = 0.0;
  for (std::size_t i = 0; i < series.hours.size(); ++i) {
    const double t = series.hours[i] - series.hours.front();
    const double fit = coeff[0] + coeff[1] * std::sin(omega0 * t) +
                       coeff[2] * std::cos(omega0 * t);
    const double r = series.demand_mw[i] - fit;
    ss += r * r;
  }
  HarmonicFit out{DemandProfile(d0, d1, omega0),
                  std::sqrt(ss / static_cast<double>(series.hours.size())), coeff[1],
                  coeff[2]};
  return out;
}

}  // namespace sarb
