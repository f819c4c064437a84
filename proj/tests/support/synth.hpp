#pragma once

#include <cmath>
#include <vector>

#include "fdrsense/sweep.hpp"

// Synthetic reflection traces for the sweep and pipeline tests.
namespace fdrsense::testing {

struct LorentzDip {
  double f0_GHz;
  double depth_dB;  // |S11| at f0
  double half_width_GHz;
};

/// |Gamma|^2 = prod_k 1 - (1 - g_k^2) / (1 + ((f - f0_k) / w_k)^2), zero phase.
inline double lorentz_magnitude(double f, const std::vector<LorentzDip>& dips) {
  double power = 1.0;
  for (const auto& d : dips) {
    const double g0 = std::pow(10.0, d.depth_dB / 20.0);
    const double x = (f - d.f0_GHz) / d.half_width_GHz;
    power *= 1.0 - (1.0 - g0 * g0) / (1.0 + x * x);
  }
  return std::sqrt(power);
}

/// Half width that puts the -10 dB crossings of a single dip at f0 +- half_band.
inline double half_width_for_band(double half_band_GHz, double depth_dB) {
  const double g0 = std::pow(10.0, depth_dB / 20.0);
  const double x = std::sqrt((1.0 - g0 * g0) / 0.9 - 1.0);
  return half_band_GHz / x;
}

/// Dip whose -10 dB band is exactly [lo, hi] when it stands alone.
inline LorentzDip dip_for_band(double lo_GHz, double hi_GHz, double depth_dB = -25.0) {
  return {0.5 * (lo_GHz + hi_GHz), depth_dB, half_width_for_band(0.5 * (hi_GHz - lo_GHz), depth_dB)};
}

/// Uniform grid lo + k * step, k = 0 .. n - 1.
inline FrequencySweep lorentz_sweep(double lo_GHz, double step_GHz, int n,
                                    const std::vector<LorentzDip>& dips) {
  FrequencySweep s;
  s.points.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double f = lo_GHz + step_GHz * k;
    s.points.push_back({f, {lorentz_magnitude(f, dips), 0.0}});
  }
  return s;
}

/// Mode-1 trace with both -10 dB bands placed on the measured band edges.
inline FrequencySweep mode1_trace() {
  return lorentz_sweep(0.5, 0.001, 1501, {dip_for_band(0.95, 0.97), dip_for_band(1.53, 1.56)});
}

/// Single loaded sensing dip (mid-band width) plus the communication dip.
inline FrequencySweep loaded_trace(double f_sense_GHz, double f_comm_GHz = 1.54) {
  return lorentz_sweep(0.5, 0.001, 1501,
                       {dip_for_band(f_sense_GHz - 0.01, f_sense_GHz + 0.01),
                        dip_for_band(f_comm_GHz - 0.015, f_comm_GHz + 0.015)});
}

}  // namespace fdrsense::testing
