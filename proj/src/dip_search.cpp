#include "dip_search.hpp"

#include <algorithm>
#include <cmath>

namespace fdrsense::detail {

double to_dB(double magnitude) {
  constexpr double kFloor = 1e-15;  // -300 dB
  return 20.0 * std::log10(std::max(magnitude, kFloor));
}

namespace {

// Vertex of the parabola through three points; b is the lowest sample so the
// vertex lies in [x0, x2].
void parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2,
                     double& xv, double& yv) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (!(curvature > 0.0)) {
    xv = x1;
    yv = y1;
    return;
  }
  // y = y1 + d01 (x - x1) + curvature (x - x0)(x - x1)
  xv = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
  xv = std::clamp(xv, x0, x2);
  yv = y1 + d01 * (xv - x1) + curvature * (xv - x0) * (xv - x1);
  yv = std::min(yv, y1);
}

}  // namespace

std::vector<DipCandidate> locate_dips(std::span<const double> freq,
                                      std::span<const double> level_dB, double threshold_dB) {
  std::vector<DipCandidate> found;
  const std::size_t n = level_dB.size();
  if (n < 3) return found;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(level_dB[i] < level_dB[i - 1])) {
      ++i;
      continue;
    }
    // Walk across a flat bottom, then require a rise on the right.
    std::size_t j = i;
    while (j + 1 < n && level_dB[j + 1] == level_dB[i]) ++j;
    if (j + 1 >= n || !(level_dB[j + 1] > level_dB[j])) {
      i = j + 1;
      continue;
    }
    const std::size_t k = i + (j - i) / 2;
    if (level_dB[k] < threshold_dB) {
      DipCandidate c;
      c.index = k;
      if (i == j) {
        parabola_vertex(freq[k - 1], level_dB[k - 1], freq[k], level_dB[k], freq[k + 1],
                        level_dB[k + 1], c.f0, c.depth_dB);
      } else {
        c.f0 = 0.5 * (freq[i] + freq[j]);
        c.depth_dB = level_dB[k];
      }
      found.push_back(c);
    }
    i = j + 1;
  }

  std::vector<DipCandidate> merged;
  for (const auto& c : found) {
    if (!merged.empty()) {
      auto& last = merged.back();
      const double step = freq[c.index] - freq[c.index - 1];
      if (c.f0 - last.f0 < 2.0 * step) {
        if (c.depth_dB < last.depth_dB) last = c;
        continue;
      }
    }
    merged.push_back(c);
  }
  return merged;
}

}  // namespace fdrsense::detail
