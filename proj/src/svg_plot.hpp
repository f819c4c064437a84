#pragma once

#include <string>
#include <vector>

#include "fdrsense/sweep.hpp"

namespace fdrsense {

struct PlotTrace {
  std::string label;
  std::vector<double> f_GHz;
  std::vector<double> level_dB;
  std::vector<double> markers_GHz;  // dip centres, drawn as circles on the trace
};

/// Static S11 chart: |S11| in dB against GHz, a dashed threshold line and
/// one polyline per trace.
std::string render_svg(const std::vector<PlotTrace>& traces, double threshold_dB);

PlotTrace trace_of(const std::string& label, const FrequencySweep& sweep, const DipReport* dips);

}  // namespace fdrsense
