#include "fdrsense/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>

#include "dip_search.hpp"
#include "fdrsense/circuit.hpp"
#include "fdrsense/error.hpp"
#include "text_util.hpp"

namespace fdrsense {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void fail_at(ErrorCode code, std::size_t line_no, const std::string& what) {
  std::ostringstream msg;
  msg << "line " << line_no << ": " << what;
  throw Error(code, msg.str());
}

void append_checked(FrequencySweep& sweep, double f_GHz, std::complex<double> gamma,
                    std::size_t line_no) {
  if (!std::isfinite(f_GHz) || !std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
    fail_at(ErrorCode::BadFieldCount, line_no, "non-finite value");
  }
  if (!sweep.points.empty() && !(f_GHz > sweep.points.back().f_GHz)) {
    fail_at(ErrorCode::NonMonotoneFrequency, line_no,
            "frequency does not increase over the previous row");
  }
  sweep.points.push_back({f_GHz, gamma});
}

void finish(const FrequencySweep& sweep) {
  if (sweep.points.size() < 2) {
    throw Error(ErrorCode::TooFewPoints, "a sweep needs at least two frequency points");
  }
}

struct OptionLine {
  double to_GHz_divisor = 1.0;
  SweepFormat format = SweepFormat::TouchstoneMA;
  double reference_ohm = 50.0;
};

OptionLine parse_option_line(std::string_view body, std::size_t line_no) {
  OptionLine opt;
  const auto tokens = text::split_ws(body);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string t = text::upper(tokens[i]);
    if (t == "HZ") opt.to_GHz_divisor = 1e9;
    else if (t == "KHZ") opt.to_GHz_divisor = 1e6;
    else if (t == "MHZ") opt.to_GHz_divisor = 1e3;
    else if (t == "GHZ") opt.to_GHz_divisor = 1.0;
    else if (t == "S") continue;
    else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
      fail_at(ErrorCode::MalformedOptionLine, line_no, "only S parameters are supported");
    } else if (t == "RI") opt.format = SweepFormat::TouchstoneRI;
    else if (t == "MA") opt.format = SweepFormat::TouchstoneMA;
    else if (t == "DB") opt.format = SweepFormat::TouchstoneDB;
    else if (t == "R") {
      if (i + 1 >= tokens.size()) {
        fail_at(ErrorCode::MalformedOptionLine, line_no, "R needs a reference impedance");
      }
      const auto r = text::parse_double(tokens[++i]);
      if (!r || !(*r > 0.0) || !std::isfinite(*r)) {
        fail_at(ErrorCode::MalformedOptionLine, line_no, "bad reference impedance");
      }
      opt.reference_ohm = *r;
    } else {
      fail_at(ErrorCode::MalformedOptionLine, line_no,
              "unrecognised option token '" + std::string(tokens[i]) + "'");
    }
  }
  return opt;
}

std::complex<double> to_gamma(SweepFormat format, double first, double second) {
  switch (format) {
    case SweepFormat::TouchstoneRI:
      return {first, second};
    case SweepFormat::TouchstoneMA:
      return std::polar(first, second * kDegToRad);
    case SweepFormat::TouchstoneDB:
    case SweepFormat::CsvDb:
      return std::polar(std::pow(10.0, first / 20.0), second * kDegToRad);
  }
  return {};
}

std::vector<double> levels_dB(const FrequencySweep& sweep) { return sweep.magnitude_dB(); }

std::optional<double> crossing_left(std::span<const double> f, std::span<const double> level,
                                    std::size_t from, double thr) {
  for (std::size_t j = from; j-- > 0;) {
    if (level[j] >= thr) {
      const double t = (thr - level[j]) / (level[j + 1] - level[j]);
      return f[j] + t * (f[j + 1] - f[j]);
    }
  }
  return std::nullopt;
}

std::optional<double> crossing_right(std::span<const double> f, std::span<const double> level,
                                     std::size_t from, double thr) {
  for (std::size_t j = from + 1; j < level.size(); ++j) {
    if (level[j] >= thr) {
      const double t = (thr - level[j - 1]) / (level[j] - level[j - 1]);
      return f[j - 1] + t * (f[j] - f[j - 1]);
    }
  }
  return std::nullopt;
}

void require_threshold(double threshold_dB) {
  if (!(threshold_dB < 0.0)) {
    throw Error(ErrorCode::InvalidValue, "dip threshold must be negative dB");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> FrequencySweep::frequencies() const {
  std::vector<double> f;
  f.reserve(points.size());
  for (const auto& p : points) f.push_back(p.f_GHz);
  return f;
}

std::vector<double> FrequencySweep::magnitude_dB() const {
  std::vector<double> db;
  db.reserve(points.size());
  for (const auto& p : points) db.push_back(detail::to_dB(std::abs(p.gamma)));
  return db;
}

void FrequencySweep::validate() const {
  finish(*this);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    if (!std::isfinite(p.f_GHz) || !std::isfinite(std::abs(p.gamma))) {
      throw Error(ErrorCode::BadFieldCount, "sweep point " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(p.f_GHz > points[i - 1].f_GHz)) {
      throw Error(ErrorCode::NonMonotoneFrequency,
                  "sweep point " + std::to_string(i) + " does not increase in frequency");
    }
  }
}

std::string_view to_string(SweepFormat format) {
  switch (format) {
    case SweepFormat::TouchstoneRI: return "touchstone-ri";
    case SweepFormat::TouchstoneMA: return "touchstone-ma";
    case SweepFormat::TouchstoneDB: return "touchstone-db";
    case SweepFormat::CsvDb: return "csv-db";
  }
  return "unknown";
}

FrequencySweep parse_touchstone(std::string_view text) {
  FrequencySweep sweep;
  OptionLine opt;
  bool have_option = false;

  const auto lines = text::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    std::string_view line = lines[n];
    if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
    line = text::trim(line);
    if (line.empty()) continue;

    if (line.front() == '#') {
      if (have_option) continue;  // only the first option line counts
      if (!sweep.points.empty()) {
        fail_at(ErrorCode::MalformedOptionLine, line_no, "option line after data rows");
      }
      opt = parse_option_line(line.substr(1), line_no);
      have_option = true;
      continue;
    }
    if (line.front() == '[') {
      fail_at(ErrorCode::MalformedOptionLine, line_no, "Touchstone v2 keywords are not supported");
    }

    const auto fields = text::split_ws(line);
    if (fields.size() == 9) {
      fail_at(ErrorCode::UnsupportedPortCount, line_no, "two-port data; only one-port files are read");
    }
    if (fields.size() != 3) {
      fail_at(ErrorCode::BadFieldCount, line_no,
              "expected 3 fields, found " + std::to_string(fields.size()));
    }
    double v[3];
    for (int k = 0; k < 3; ++k) {
      const auto parsed = text::parse_double(fields[k]);
      if (!parsed) {
        fail_at(ErrorCode::BadFieldCount, line_no,
                "field " + std::to_string(k + 1) + " is not numeric");
      }
      v[k] = *parsed;
    }
    append_checked(sweep, v[0] / opt.to_GHz_divisor, to_gamma(opt.format, v[1], v[2]), line_no);
  }

  sweep.source_format = opt.format;
  sweep.reference_ohm = opt.reference_ohm;
  finish(sweep);
  return sweep;
}

FrequencySweep parse_csv(std::string_view text) {
  FrequencySweep sweep;
  sweep.source_format = SweepFormat::CsvDb;
  bool have_header = false;

  const auto lines = text::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const std::string_view line = text::trim(lines[n]);
    if (line.empty()) continue;
    const auto cells = text::split_char(line, ',');

    if (!have_header) {
      if (cells.size() != 2 || text::lower(text::trim(cells[0])) != "freq_ghz" ||
          text::lower(text::trim(cells[1])) != "s11_db") {
        fail_at(ErrorCode::MissingHeader, line_no, "expected header 'freq_ghz,s11_db'");
      }
      have_header = true;
      continue;
    }
    if (cells.size() != 2) {
      fail_at(ErrorCode::BadFieldCount, line_no,
              "expected 2 fields, found " + std::to_string(cells.size()));
    }
    const auto f = text::parse_double(text::trim(cells[0]));
    const auto db = text::parse_double(text::trim(cells[1]));
    if (!f || !db) fail_at(ErrorCode::BadFieldCount, line_no, "non-numeric cell");
    append_checked(sweep, *f, to_gamma(SweepFormat::CsvDb, *db, 0.0), line_no);
  }
  if (!have_header) throw Error(ErrorCode::MissingHeader, "empty CSV input");
  finish(sweep);
  return sweep;
}

FrequencySweep parse_sweep(std::string_view content, std::string_view filename_hint) {
  for (const auto raw : text::split_lines(content)) {
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#' || line.front() == '!') return parse_touchstone(content);
    if (text::lower(line).starts_with("freq_ghz")) return parse_csv(content);
    break;
  }
  const std::string hint = text::lower(filename_hint);
  if (hint.ends_with(".csv")) return parse_csv(content);
  if (const auto ports = text::touchstone_ports(hint); ports && *ports != 1) {
    throw Error(ErrorCode::UnsupportedPortCount, "only one-port (.s1p) files are read");
  }
  return parse_touchstone(content);
}

FrequencySweep load_sweep(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "failed reading '" + path + "'");
  return parse_sweep(buf.str(), path);
}

std::string write_touchstone(const FrequencySweep& sweep, SweepFormat format) {
  if (format == SweepFormat::CsvDb) format = SweepFormat::TouchstoneRI;
  std::ostringstream out;
  out << std::setprecision(17);
  out << "! one-port reflection, " << sweep.points.size() << " points\n";
  out << "# GHz S ";
  switch (format) {
    case SweepFormat::TouchstoneRI: out << "RI"; break;
    case SweepFormat::TouchstoneMA: out << "MA"; break;
    default: out << "DB"; break;
  }
  out << " R " << sweep.reference_ohm << '\n';
  for (const auto& p : sweep.points) {
    out << p.f_GHz << ' ';
    switch (format) {
      case SweepFormat::TouchstoneRI:
        out << p.gamma.real() << ' ' << p.gamma.imag();
        break;
      case SweepFormat::TouchstoneMA:
        out << std::abs(p.gamma) << ' ' << std::arg(p.gamma) / kDegToRad;
        break;
      default:
        out << 20.0 * std::log10(std::abs(p.gamma)) << ' ' << std::arg(p.gamma) / kDegToRad;
        break;
    }
    out << '\n';
  }
  return out.str();
}

FrequencySweep sweep_from_network(const Element& net, double lo_GHz, double hi_GHz, int points,
                                  double z_ref_ohm) {
  if (points < 2 || !(hi_GHz > lo_GHz)) {
    throw Error(ErrorCode::InvalidValue, "synthesis needs an increasing span and >= 2 points");
  }
  FrequencySweep sweep;
  sweep.reference_ohm = z_ref_ohm;
  sweep.points.reserve(static_cast<std::size_t>(points));
  const double step = (hi_GHz - lo_GHz) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double f = i + 1 == points ? hi_GHz : lo_GHz + step * i;
    sweep.points.push_back({f, reflection(net, f, z_ref_ohm)});
  }
  return sweep;
}

// ---------------------------------------------------------------------------

DipReport detect_dips(const FrequencySweep& sweep, double threshold_dB) {
  require_threshold(threshold_dB);
  sweep.validate();
  const auto f = sweep.frequencies();
  const auto level = levels_dB(sweep);

  DipReport report;
  report.threshold_dB = threshold_dB;
  for (const auto& c : detail::locate_dips(f, level, threshold_dB)) {
    Dip dip;
    dip.f0_GHz = c.f0;
    dip.depth_dB = c.depth_dB;
    dip.band_lo_GHz = crossing_left(f, level, c.index, threshold_dB);
    dip.band_hi_GHz = crossing_right(f, level, c.index, threshold_dB);
    const bool inside_lo = !dip.band_lo_GHz || *dip.band_lo_GHz < dip.f0_GHz;
    const bool inside_hi = !dip.band_hi_GHz || dip.f0_GHz < *dip.band_hi_GHz;
    if (!inside_lo || !inside_hi) dip.f0_GHz = f[c.index];
    report.dips.push_back(dip);
  }
  if (report.dips.empty()) {
    std::ostringstream msg;
    msg << "no reflection dip below " << threshold_dB << " dB";
    throw Error(ErrorCode::NoDipFound, msg.str());
  }
  return report;
}

std::pair<double, double> band_at_threshold(const FrequencySweep& sweep, double dip_f0_GHz,
                                            double threshold_dB) {
  require_threshold(threshold_dB);
  sweep.validate();
  const auto f = sweep.frequencies();
  const auto level = levels_dB(sweep);

  const auto it = std::lower_bound(f.begin(), f.end(), dip_f0_GHz);
  std::size_t k = static_cast<std::size_t>(std::distance(f.begin(), it));
  if (k == f.size()) --k;
  if (k > 0 && dip_f0_GHz - f[k - 1] < f[k] - dip_f0_GHz) --k;

  // The nearest sample may sit just outside a narrow dip; look one step aside.
  std::size_t best = k;
  for (std::size_t j : {k > 0 ? k - 1 : k, k + 1 < f.size() ? k + 1 : k}) {
    if (level[j] < level[best]) best = j;
  }
  if (!(level[best] < threshold_dB)) {
    std::ostringstream msg;
    msg << "trace near " << dip_f0_GHz << " GHz does not reach " << threshold_dB << " dB";
    throw Error(ErrorCode::NoDipFound, msg.str());
  }
  const auto lo = crossing_left(f, level, best, threshold_dB);
  const auto hi = crossing_right(f, level, best, threshold_dB);
  if (!lo || !hi) {
    std::ostringstream msg;
    msg << "dip near " << dip_f0_GHz << " GHz has no " << (lo ? "upper" : "lower")
        << " band edge inside the sweep";
    throw Error(ErrorCode::EdgeNotInSpan, msg.str());
  }
  return {*lo, *hi};
}

std::vector<RepeatabilityEntry> compare_repeatability(const DipReport& reference,
                                                      const DipReport& repeat,
                                                      double tolerance_MHz) {
  std::vector<RepeatabilityEntry> out;
  for (const auto& dip : reference.dips) {
    RepeatabilityEntry e;
    e.f_reference_GHz = dip.f0_GHz;
    e.f_repeat_GHz = std::numeric_limits<double>::quiet_NaN();
    e.difference_MHz = std::numeric_limits<double>::infinity();
    for (const auto& other : repeat.dips) {
      const double d = std::abs(other.f0_GHz - dip.f0_GHz) * 1e3;
      if (d < e.difference_MHz) {
        e.difference_MHz = d;
        e.f_repeat_GHz = other.f0_GHz;
      }
    }
    e.exceeds = !(e.difference_MHz <= tolerance_MHz);
    if (std::isnan(e.f_repeat_GHz)) e.difference_MHz = std::numeric_limits<double>::quiet_NaN();
    out.push_back(e);
  }
  return out;
}

}  // namespace fdrsense
