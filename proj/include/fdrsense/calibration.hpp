#pragma once

#include <string_view>
#include <utility>
#include <vector>

// Frequency-domain reflectometry inversion: resonance shift -> real soil
// permittivity -> volumetric water content.

namespace fdrsense {

/// Affine map from frequency shift (GHz) to real permittivity.
struct CalibrationModel {
  double f_u_GHz = 0.96;   // unloaded resonance
  double slope = 0.0;      // eps'_r per GHz of shift
  double intercept = 0.0;  // eps'_r at zero shift
  double fit_residual = 0.0;

  /// Throws InvalidModel unless f_u > 0 and the slope is finite and non-zero.
  void validate() const;

  double permittivity(double delta_f_GHz) const { return slope * delta_f_GHz + intercept; }

  friend bool operator==(const CalibrationModel&, const CalibrationModel&) = default;
};

struct SoilRow {
  double vwc_percent = 0.0;
  double eps_r_real = 0.0;

  friend bool operator==(const SoilRow&, const SoilRow&) = default;
};

/// Monotone VWC <-> eps'_r lookup, linear between rows.
class SoilTable {
 public:
  /// Throws InvalidTable unless there are >= 2 rows with both columns strictly increasing.
  explicit SoilTable(std::vector<SoilRow> rows);

  const std::vector<SoilRow>& rows() const noexcept { return rows_; }
  double min_permittivity() const { return rows_.front().eps_r_real; }
  double max_permittivity() const { return rows_.back().eps_r_real; }

  /// Both lookups clamp to the end rows outside the table.
  double permittivity_at(double vwc_percent) const;
  double vwc_at(double eps_r_real) const;

  bool contains_permittivity(double eps_r_real) const {
    return eps_r_real >= min_permittivity() && eps_r_real <= max_permittivity();
  }

  friend bool operator==(const SoilTable&, const SoilTable&) = default;

 private:
  std::vector<SoilRow> rows_;
};

/// Soil permittivity against VWC, 0 to 30 % in 5 % steps (3.7 ... 19).
const SoilTable& default_soil_table();

/// Two-point line through the loaded-resonance endpoints (0.93 GHz -> 3.7,
/// 0.83 GHz -> 19) with f_u = 0.96 GHz. Derived from figure endpoints; replace
/// it with a fit to your own calibration readings.
CalibrationModel default_calibration_model();

struct Estimate {
  double delta_f_GHz = 0.0;
  double eps_r_real = 0.0;
  double vwc_percent = 0.0;
  bool extrapolated = false;

  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// delta_f = f_m - f_u. Throws NonPositiveFrequency.
double frequency_shift(double f_m_GHz, double f_u_GHz);

/// Ordinary least squares over (delta_f, eps'_r) pairs; residual is RMS.
/// Throws DegenerateFit for fewer than two points or a single distinct shift.
CalibrationModel fit_linear(const std::vector<std::pair<double, double>>& points, double f_u_GHz);

/// eps'_r from the model, VWC from the inverted table. Outside the table the
/// VWC clamps to the nearest end row and `extrapolated` is set; eps'_r is
/// reported unclamped.
Estimate estimate(double f_m_GHz, const CalibrationModel& model,
                  const SoilTable& table = default_soil_table());

/// |(f1 - f2) / (f_u (eps1 - eps2))| x 100, in percent.
double sensitivity(double f1_GHz, double f2_GHz, double eps1, double eps2, double f_u_GHz);

/// Sensitivity of each adjacent pair of (f, eps'_r) readings; the last entry
/// is the figure at the highest permittivity step. Readings must be strictly
/// monotone in permittivity.
std::vector<double> sensitivity_profile(const std::vector<std::pair<double, double>>& readings,
                                        double f_u_GHz);

/// Frequency step (GHz) that produces `percent` sensitivity over a
/// permittivity step `delta_eps` at f_u.
double shift_for_sensitivity(double percent, double f_u_GHz, double delta_eps);

// Flat-file forms: CSV with a header row.
std::vector<std::pair<double, double>> parse_calibration_points(std::string_view csv);  // delta_f_ghz,eps_r
SoilTable parse_soil_table(std::string_view csv);                                     // vwc_percent,eps_r
std::vector<std::pair<double, double>> parse_readings(std::string_view csv);          // f_ghz,eps_r

}  // namespace fdrsense
