#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdrsense::detail {

struct DipCandidate {
  std::size_t index = 0;  // grid sample at the bottom of the dip
  double f0 = 0.0;        // parabola-refined centre
  double depth_dB = 0.0;  // parabola-refined depth
};

/// Strict local minima of `level_dB` below `threshold_dB`, refined with a
/// three-point parabola and merged when closer than two grid steps. `freq`
/// must be strictly increasing and the same length as `level_dB`.
std::vector<DipCandidate> locate_dips(std::span<const double> freq,
                                      std::span<const double> level_dB, double threshold_dB);

/// 20 log10 |gamma| with a finite floor for perfect matches.
double to_dB(double magnitude);

}  // namespace fdrsense::detail
