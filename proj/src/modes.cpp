#include "fdrsense/modes.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "fdrsense/error.hpp"

namespace fdrsense {
namespace {

constexpr std::string_view kEnDash = "–";

std::string format_band(const Band& b) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f%s%.2f", b.lo_GHz, std::string(kEnDash).c_str(), b.hi_GHz);
  return buf;
}

}  // namespace

bool ModeState::offers(Service s) const {
  return std::find(services.begin(), services.end(), s) != services.end();
}

std::string ModeState::state_code() const {
  std::string code;
  code += d2 == DiodeState::On ? '1' : '0';
  code += d1 == DiodeState::On ? '1' : '0';
  return code;
}

ModeState resolve(DiodeState d2, DiodeState d1) {
  ModeState m;
  m.d2 = d2;
  m.d1 = d1;
  if (d2 == DiodeState::Off && d1 == DiodeState::Off) {
    m.mode_index = 1;
    m.bands = {{0.95, 0.97}, {1.53, 1.56}};
    m.services = {Service::Sensing, Service::Communication};
    m.application = "Dual-band JCASA";
  } else if (d2 == DiodeState::On && d1 == DiodeState::Off) {
    m.mode_index = 2;
    m.bands = {{0.91, 0.94}, {1.54, 1.57}};
    m.services = {Service::Communication};
    m.application = "Dual-band antenna";
  } else if (d2 == DiodeState::On && d1 == DiodeState::On) {
    m.mode_index = 3;
    m.bands = {{0.83, 0.85}};
    m.services = {Service::Communication};
    m.application = "Single-band antenna";
  } else {
    throw Error(ErrorCode::UnsupportedState,
                "diode state (D2, D1) = (0, 1) has no defined operating mode");
  }
  return m;
}

ModeState resolve(std::string_view code) {
  if (code.size() == 2 && (code[0] == '0' || code[0] == '1') && (code[1] == '0' || code[1] == '1')) {
    const auto bit = [](char c) { return c == '1' ? DiodeState::On : DiodeState::Off; };
    return resolve(bit(code[0]), bit(code[1]));
  }
  throw Error(ErrorCode::UnsupportedState,
              "diode state '" + std::string(code) + "' is not one of 00, 10, 11");
}

std::vector<ModeState> all_modes() {
  return {resolve(DiodeState::Off, DiodeState::Off), resolve(DiodeState::On, DiodeState::Off),
          resolve(DiodeState::On, DiodeState::On)};
}

SensingDecision guard_sensing(const ModeState& state) {
  SensingDecision d;
  d.mode_index = state.mode_index;
  d.permitted = state.offers(Service::Sensing);
  if (!d.permitted) {
    std::ostringstream msg;
    msg << "mode " << state.mode_index << " (" << state.application
        << ") is not a sensing mode: its resonance shift does not track soil permittivity; "
           "switch both diodes off (state 00) to sense";
    d.reason = msg.str();
  }
  return d;
}

std::vector<ClassifiedDip> classify_dips(const ModeState& state, const DipReport& dips,
                                         const ClassifyWindows& windows) {
  const Band* window_for_band[] = {&windows.low, &windows.high};
  std::vector<ClassifiedDip> out;
  out.reserve(dips.dips.size());
  for (const auto& dip : dips.dips) {
    ClassifiedDip c{dip.f0_GHz, DipRole::Unassigned};
    for (std::size_t k = 0; k < state.bands.size() && k < 2; ++k) {
      if (!window_for_band[k]->contains(dip.f0_GHz)) continue;
      c.role = (k == 0 && state.offers(Service::Sensing)) ? DipRole::Sensing
                                                          : DipRole::Communication;
      break;
    }
    out.push_back(c);
  }
  return out;
}

std::string format_mode_table() {
  std::ostringstream out;
  out << "Mode\tDiodes State (D2, D1)\tBand 1 (GHz)\tBand 2 (GHz)\tApplication\n";
  for (const auto& m : all_modes()) {
    out << m.mode_index << '\t' << m.state_code() << '\t' << format_band(m.bands.at(0)) << '\t'
        << (m.bands.size() > 1 ? format_band(m.bands[1]) : std::string(kEnDash)) << '\t'
        << m.application << '\n';
  }
  return out.str();
}

std::string_view to_string(Service s) {
  return s == Service::Sensing ? "sensing" : "communication";
}

std::string_view to_string(DipRole r) {
  switch (r) {
    case DipRole::Sensing: return "sensing";
    case DipRole::Communication: return "communication";
    case DipRole::Unassigned: return "unassigned";
  }
  return "unassigned";
}

}  // namespace fdrsense
