#include "fdrsense/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdrsense/error.hpp"
#include "text_util.hpp"

namespace fdrsense {
namespace {

void require_frequency(const char* name, double f) {
  if (!std::isfinite(f) || f <= 0.0) {
    std::ostringstream msg;
    msg << name << " must be a positive frequency, got " << f;
    throw Error(ErrorCode::NonPositiveFrequency, msg.str());
  }
}

// Linear interpolation on a strictly increasing abscissa, clamped at the ends.
template <typename X, typename Y>
double interpolate(const std::vector<SoilRow>& rows, double x, X xs, Y ys) {
  if (x <= xs(rows.front())) return ys(rows.front());
  if (x >= xs(rows.back())) return ys(rows.back());
  const auto upper = std::upper_bound(rows.begin(), rows.end(), x,
                                      [&](double v, const SoilRow& r) { return v < xs(r); });
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  const double t = (x - xs(lo)) / (xs(hi) - xs(lo));
  return ys(lo) + t * (ys(hi) - ys(lo));
}

std::vector<std::pair<double, double>> parse_two_columns(std::string_view csv,
                                                         std::string_view first,
                                                         std::string_view second) {
  std::vector<std::pair<double, double>> rows;
  bool have_header = false;
  const auto lines = text::split_lines(csv);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = text::trim(lines[n]);
    if (line.empty()) continue;
    const auto cells = text::split_char(line, ',');
    std::ostringstream where;
    where << "line " << n + 1 << ": ";
    if (!have_header) {
      if (cells.size() != 2 || text::lower(text::trim(cells[0])) != first ||
          text::lower(text::trim(cells[1])) != second) {
        throw Error(ErrorCode::MissingHeader,
                    where.str() + "expected header '" + std::string(first) + "," +
                        std::string(second) + "'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != 2) {
      throw Error(ErrorCode::BadFieldCount,
                  where.str() + "expected 2 fields, found " + std::to_string(cells.size()));
    }
    const auto a = text::parse_double(cells[0]);
    const auto b = text::parse_double(cells[1]);
    if (!a || !b || !std::isfinite(*a) || !std::isfinite(*b)) {
      throw Error(ErrorCode::BadFieldCount, where.str() + "non-numeric cell");
    }
    rows.emplace_back(*a, *b);
  }
  if (!have_header) throw Error(ErrorCode::MissingHeader, "empty CSV input");
  return rows;
}

}  // namespace

void CalibrationModel::validate() const {
  if (!std::isfinite(f_u_GHz) || f_u_GHz <= 0.0) {
    throw Error(ErrorCode::InvalidModel, "unloaded resonance f_u must be positive");
  }
  if (!std::isfinite(slope) || slope == 0.0 || !std::isfinite(intercept)) {
    throw Error(ErrorCode::InvalidModel, "calibration slope must be finite and non-zero");
  }
}

SoilTable::SoilTable(std::vector<SoilRow> rows) : rows_(std::move(rows)) {
  if (rows_.size() < 2) throw Error(ErrorCode::InvalidTable, "soil table needs at least two rows");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!std::isfinite(r.vwc_percent) || !std::isfinite(r.eps_r_real)) {
      throw Error(ErrorCode::InvalidTable, "soil table row " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(r.vwc_percent > rows_[i - 1].vwc_percent &&
                   r.eps_r_real > rows_[i - 1].eps_r_real)) {
      throw Error(ErrorCode::InvalidTable,
                  "soil table must be strictly increasing in both columns (row " +
                      std::to_string(i) + ")");
    }
  }
}

double SoilTable::permittivity_at(double vwc_percent) const {
  return interpolate(
      rows_, vwc_percent, [](const SoilRow& r) { return r.vwc_percent; },
      [](const SoilRow& r) { return r.eps_r_real; });
}

double SoilTable::vwc_at(double eps_r_real) const {
  return interpolate(
      rows_, eps_r_real, [](const SoilRow& r) { return r.eps_r_real; },
      [](const SoilRow& r) { return r.vwc_percent; });
}

const SoilTable& default_soil_table() {
  static const SoilTable table({{0.0, 3.7},
                                {5.0, 4.4},
                                {10.0, 5.8},
                                {15.0, 8.4},
                                {20.0, 12.0},
                                {25.0, 15.8},
                                {30.0, 19.0}});
  return table;
}

CalibrationModel default_calibration_model() {
  return fit_linear({{-0.03, 3.7}, {-0.13, 19.0}}, 0.96);
}

double frequency_shift(double f_m_GHz, double f_u_GHz) {
  require_frequency("f_m", f_m_GHz);
  require_frequency("f_u", f_u_GHz);
  return f_m_GHz - f_u_GHz;
}

CalibrationModel fit_linear(const std::vector<std::pair<double, double>>& points,
                            double f_u_GHz) {
  require_frequency("f_u", f_u_GHz);
  if (points.size() < 2) throw Error(ErrorCode::DegenerateFit, "need at least two calibration points");
  const bool one_shift = std::all_of(points.begin(), points.end(),
                                     [&](const auto& p) { return p.first == points.front().first; });
  if (one_shift) throw Error(ErrorCode::DegenerateFit, "all calibration points share one frequency shift");

  const double n = static_cast<double>(points.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (const auto& [x, y] : points) {
    mean_x += x;
    mean_y += y;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mean_x) * (x - mean_x);
    sxy += (x - mean_x) * (y - mean_y);
  }

  CalibrationModel m;
  m.f_u_GHz = f_u_GHz;
  m.slope = sxy / sxx;
  m.intercept = mean_y - m.slope * mean_x;
  if (points.size() > 2) {
    double ss = 0.0;
    for (const auto& [x, y] : points) {
      const double r = y - m.permittivity(x);
      ss += r * r;
    }
    m.fit_residual = std::sqrt(ss / n);
  }
  return m;
}

Estimate estimate(double f_m_GHz, const CalibrationModel& model, const SoilTable& table) {
  model.validate();
  Estimate e;
  e.delta_f_GHz = frequency_shift(f_m_GHz, model.f_u_GHz);
  e.eps_r_real = model.permittivity(e.delta_f_GHz);
  e.vwc_percent = table.vwc_at(e.eps_r_real);
  e.extrapolated = !table.contains_permittivity(e.eps_r_real);
  return e;
}

double sensitivity(double f1_GHz, double f2_GHz, double eps1, double eps2, double f_u_GHz) {
  require_frequency("f1", f1_GHz);
  require_frequency("f2", f2_GHz);
  require_frequency("f_u", f_u_GHz);
  if (eps1 == eps2) {
    throw Error(ErrorCode::EqualPermittivities, "sensitivity needs two different permittivities");
  }
  return std::abs((f1_GHz - f2_GHz) / (f_u_GHz * (eps1 - eps2))) * 100.0;
}

std::vector<double> sensitivity_profile(const std::vector<std::pair<double, double>>& readings,
                                        double f_u_GHz) {
  if (readings.size() < 2) throw Error(ErrorCode::TooFewPoints, "need at least two readings");
  const bool rising = readings[1].second > readings[0].second;
  for (std::size_t i = 1; i < readings.size(); ++i) {
    const double step = readings[i].second - readings[i - 1].second;
    if (!(rising ? step > 0.0 : step < 0.0)) {
      throw Error(ErrorCode::NonMonotonePermittivity,
                  "permittivity is not strictly monotone at reading " + std::to_string(i));
    }
  }
  std::vector<double> out;
  out.reserve(readings.size() - 1);
  for (std::size_t i = 1; i < readings.size(); ++i) {
    out.push_back(sensitivity(readings[i - 1].first, readings[i].first, readings[i - 1].second,
                              readings[i].second, f_u_GHz));
  }
  return out;
}

double shift_for_sensitivity(double percent, double f_u_GHz, double delta_eps) {
  require_frequency("f_u", f_u_GHz);
  return std::abs(percent / 100.0 * f_u_GHz * delta_eps);
}

std::vector<std::pair<double, double>> parse_calibration_points(std::string_view csv) {
  return parse_two_columns(csv, "delta_f_ghz", "eps_r");
}

SoilTable parse_soil_table(std::string_view csv) {
  std::vector<SoilRow> rows;
  for (const auto& [vwc, eps] : parse_two_columns(csv, "vwc_percent", "eps_r")) {
    rows.push_back({vwc, eps});
  }
  return SoilTable(std::move(rows));
}

std::vector<std::pair<double, double>> parse_readings(std::string_view csv) {
  return parse_two_columns(csv, "f_ghz", "eps_r");
}

}  // namespace fdrsense
