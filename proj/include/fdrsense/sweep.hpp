#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdrsense {

class Element;

enum class SweepFormat { TouchstoneRI, TouchstoneMA, TouchstoneDB, CsvDb };

struct SweepPoint {
  double f_GHz = 0.0;
  std::complex<double> gamma;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

/// One-port reflection trace. Frequencies are strictly increasing, there are
/// at least two points, and every reflection value is finite.
struct FrequencySweep {
  std::vector<SweepPoint> points;
  SweepFormat source_format = SweepFormat::TouchstoneRI;
  double reference_ohm = 50.0;

  std::vector<double> frequencies() const;
  std::vector<double> magnitude_dB() const;

  void validate() const;
};

struct Dip {
  double f0_GHz = 0.0;
  double depth_dB = 0.0;
  std::optional<double> band_lo_GHz;  // absent when the trace never re-crosses
  std::optional<double> band_hi_GHz;

  friend bool operator==(const Dip&, const Dip&) = default;
};

struct DipReport {
  std::vector<Dip> dips;  // ascending f0
  double threshold_dB = -10.0;

  friend bool operator==(const DipReport&, const DipReport&) = default;
};

/// Touchstone v1 one-port (.s1p). Honours `# <unit> S <RI|MA|DB> R <ref>`
/// (defaults GHz, MA, 50 ohm), `!` comments and blank lines.
FrequencySweep parse_touchstone(std::string_view text);

/// Two columns `freq_ghz,s11_db` after a single header row; phase is taken as 0.
FrequencySweep parse_csv(std::string_view text);

/// Picks the parser by content: a `#` option line or `!` comment means
/// Touchstone, a `freq_ghz` header means CSV; otherwise by file extension.
FrequencySweep parse_sweep(std::string_view text, std::string_view filename_hint = {});

/// Reads a file and dispatches on its content. Throws Error(Io) on read failure.
FrequencySweep load_sweep(const std::string& path);

/// Touchstone v1 text at full double precision in the requested format
/// (CsvDb is not a Touchstone format and falls back to RI).
std::string write_touchstone(const FrequencySweep& sweep, SweepFormat format = SweepFormat::TouchstoneRI);

/// Samples reflection of a circuit model on a uniform grid.
FrequencySweep sweep_from_network(const Element& net, double lo_GHz, double hi_GHz, int points,
                                  double z_ref_ohm = 50.0);

/// Throws NoDipFound when nothing lies below the threshold.
DipReport detect_dips(const FrequencySweep& sweep, double threshold_dB = -10.0);

/// Threshold crossings flanking the dip nearest `dip_f0_GHz`. Throws
/// NoDipFound when no sample there is below threshold and EdgeNotInSpan
/// when the trace does not come back up on one side.
std::pair<double, double> band_at_threshold(const FrequencySweep& sweep, double dip_f0_GHz,
                                            double threshold_dB = -10.0);

struct RepeatabilityEntry {
  double f_reference_GHz = 0.0;
  double f_repeat_GHz = 0.0;
  double difference_MHz = 0.0;
  bool exceeds = false;
};

/// Pairs each reference dip with the nearest dip of the repeat measurement and
/// flags pairs further apart than `tolerance_MHz`. Unpaired reference dips are
/// reported with NaN repeat frequency and difference, and flagged.
std::vector<RepeatabilityEntry> compare_repeatability(const DipReport& reference,
                                                      const DipReport& repeat,
                                                      double tolerance_MHz = 10.0);

std::string_view to_string(SweepFormat format);

}  // namespace fdrsense
