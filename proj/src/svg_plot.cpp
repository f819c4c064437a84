#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace fdrsense {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 64.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 48.0;

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b"};

std::string fmt(double v, int decimals = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  const auto it = std::lower_bound(x.begin(), x.end(), at);
  if (it == x.begin()) return y.front();
  if (it == x.end()) return y.back();
  const auto i = static_cast<std::size_t>(it - x.begin());
  const double t = (at - x[i - 1]) / (x[i] - x[i - 1]);
  return y[i - 1] + t * (y[i] - y[i - 1]);
}

}  // namespace

PlotTrace trace_of(const std::string& label, const FrequencySweep& sweep, const DipReport* dips) {
  PlotTrace t{label, sweep.frequencies(), sweep.magnitude_dB(), {}};
  if (dips) {
    for (const auto& d : dips->dips) t.markers_GHz.push_back(d.f0_GHz);
  }
  return t;
}

std::string render_svg(const std::vector<PlotTrace>& traces, double threshold_dB) {
  double f_lo = std::numeric_limits<double>::infinity();
  double f_hi = -f_lo;
  double y_lo = threshold_dB;
  for (const auto& t : traces) {
    if (t.f_GHz.empty()) continue;
    f_lo = std::min(f_lo, t.f_GHz.front());
    f_hi = std::max(f_hi, t.f_GHz.back());
    for (double v : t.level_dB) {
      if (std::isfinite(v)) y_lo = std::min(y_lo, v);
    }
  }
  if (!(f_hi > f_lo)) {
    f_lo = 0.0;
    f_hi = 1.0;
  }
  y_lo = std::floor(y_lo / 10.0) * 10.0;
  if (y_lo > -10.0) y_lo = -10.0;
  const double y_hi = 0.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double f) { return kLeft + (f - f_lo) / (f_hi - f_lo) * pw; };
  const auto py = [&](double db) {
    const double c = std::clamp(db, y_lo, y_hi);
    return kTop + (y_hi - c) / (y_hi - y_lo) * ph;
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth, 0) + "\" height=\"" +
       fmt(kHeight, 0) + "\" viewBox=\"0 0 " + fmt(kWidth, 0) + " " + fmt(kHeight, 0) +
       "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" + fmt(pw) +
       "\" height=\"" + fmt(ph) + "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double f = f_lo + (f_hi - f_lo) * k / 5.0;
    s += "<text x=\"" + fmt(px(f)) + "\" y=\"" + fmt(kTop + ph + 16) +
         "\" text-anchor=\"middle\">" + fmt(f, 3) + "</text>\n";
  }
  for (double db = y_lo; db <= y_hi + 1e-9; db += 10.0) {
    s += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + pw) + "\" y1=\"" + fmt(py(db)) +
         "\" y2=\"" + fmt(py(db)) + "\" stroke=\"#ddd\"/>\n";
    s += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(py(db) + 4) + "\" text-anchor=\"end\">" +
         fmt(db, 0) + "</text>\n";
  }
  s += "<text x=\"" + fmt(kLeft + pw / 2) + "\" y=\"" + fmt(kHeight - 8) +
       "\" text-anchor=\"middle\">Frequency (GHz)</text>\n";
  s += "<text transform=\"translate(16 " + fmt(kTop + ph / 2) +
       ") rotate(-90)\" text-anchor=\"middle\">|S11| (dB)</text>\n";
  s += "<line x1=\"" + fmt(kLeft) + "\" x2=\"" + fmt(kLeft + pw) + "\" y1=\"" +
       fmt(py(threshold_dB)) + "\" y2=\"" + fmt(py(threshold_dB)) +
       "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";

  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    const char* colour = kColours[i % std::size(kColours)];
    s += "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < t.f_GHz.size(); ++k) {
      if (k) s += ' ';
      s += fmt(px(t.f_GHz[k])) + "," + fmt(py(t.level_dB[k]));
    }
    s += "\"/>\n";
    for (double m : t.markers_GHz) {
      s += "<circle cx=\"" + fmt(px(m)) + "\" cy=\"" + fmt(py(interpolate(t.f_GHz, t.level_dB, m))) +
           "\" r=\"4\" fill=\"none\" stroke=\"" + colour + "\"/>\n";
    }
    s += "<text x=\"" + fmt(kLeft + pw - 8) + "\" y=\"" + fmt(kTop + 16 + 14.0 * static_cast<double>(i)) +
         "\" text-anchor=\"end\" fill=\"" + colour + "\">" + escape(t.label) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace fdrsense
