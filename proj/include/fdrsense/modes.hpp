#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdrsense/circuit.hpp"
#include "fdrsense/sweep.hpp"

namespace fdrsense {

enum class Service { Sensing, Communication };

struct Band {
  double lo_GHz = 0.0;
  double hi_GHz = 0.0;

  bool contains(double f) const { return f >= lo_GHz && f <= hi_GHz; }
  friend bool operator==(const Band&, const Band&) = default;
};

/// Operating mode selected by the (D2, D1) diode pair.
struct ModeState {
  DiodeState d2 = DiodeState::Off;
  DiodeState d1 = DiodeState::Off;
  int mode_index = 1;
  std::vector<Band> bands;        // measured -10 dB bands, ascending
  std::vector<Service> services;  // Sensing before Communication
  std::string application;

  bool offers(Service s) const;
  /// "00", "10" or "11" (D2 first).
  std::string state_code() const;

  friend bool operator==(const ModeState&, const ModeState&) = default;
};

/// Throws UnsupportedState for (D2, D1) = (Off, On), which has no defined mode.
ModeState resolve(DiodeState d2, DiodeState d1);

/// Accepts "00", "10", "11"; anything else is UnsupportedState.
ModeState resolve(std::string_view state_code);

/// The three defined states in table order.
std::vector<ModeState> all_modes();

struct SensingDecision {
  bool permitted = false;
  int mode_index = 0;
  std::string reason;
};

SensingDecision guard_sensing(const ModeState& state);

enum class DipRole { Sensing, Communication, Unassigned };

/// Search windows for a loaded antenna. Soil loading pulls the sensing band
/// down to about 0.83 GHz and the communication band down to about 1.35 GHz.
struct ClassifyWindows {
  Band low{0.80, 1.00};
  Band high{1.30, 1.60};
};

struct ClassifiedDip {
  double f0_GHz = 0.0;
  DipRole role = DipRole::Unassigned;

  friend bool operator==(const ClassifiedDip&, const ClassifiedDip&) = default;
};

/// Labels each dip by the window of the mode's band it falls in. The first
/// band is the sensing band when the mode offers sensing; every other
/// declared band is communication.
std::vector<ClassifiedDip> classify_dips(const ModeState& state, const DipReport& dips,
                                         const ClassifyWindows& windows = {});

/// Tab-separated mode table with en-dash ranges, one line per state.
std::string format_mode_table();

std::string_view to_string(Service s);
std::string_view to_string(DipRole r);

}  // namespace fdrsense
