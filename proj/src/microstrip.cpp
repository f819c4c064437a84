#include "fdrsense/microstrip.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fdrsense/error.hpp"

namespace fdrsense {
namespace {

bool narrow(const MicrostripLine& line) { return line.width_mm < line.substrate.height_mm; }

[[noreturn]] void bad_geometry(const char* field, double value) {
  std::ostringstream msg;
  msg << field << " = " << value << " is out of range";
  throw Error(ErrorCode::InvalidGeometry, msg.str());
}

}  // namespace

void validate(const MicrostripLine& line) {
  const auto& s = line.substrate;
  if (!std::isfinite(s.eps_r) || s.eps_r < 1.0) bad_geometry("eps_r", s.eps_r);
  if (!std::isfinite(s.tan_delta) || s.tan_delta < 0.0) bad_geometry("tan_delta", s.tan_delta);
  if (!std::isfinite(s.height_mm) || s.height_mm <= 0.0) bad_geometry("height_mm", s.height_mm);
  if (!std::isfinite(line.width_mm) || line.width_mm <= 0.0) bad_geometry("width_mm", line.width_mm);
  if (!std::isfinite(line.length_mm) || line.length_mm < 0.0) bad_geometry("length_mm", line.length_mm);
}

double effective_permittivity(const MicrostripLine& line) {
  validate(line);
  const double er = line.substrate.eps_r;
  const double u = line.width_mm / line.substrate.height_mm;
  double fill = 1.0 / std::sqrt(1.0 + 12.0 / u);
  if (narrow(line)) fill += 0.04 * (1.0 - u) * (1.0 - u);
  return 0.5 * (er + 1.0) + 0.5 * (er - 1.0) * fill;
}

double characteristic_impedance(const MicrostripLine& line, FormulaFidelity fidelity) {
  const double e = effective_permittivity(line);
  const double u = line.width_mm / line.substrate.height_mm;
  const bool literal = fidelity == FormulaFidelity::PaperLiteral;
  const double scale = literal ? e : std::sqrt(e);
  const auto lg = [literal](double x) { return literal ? std::log2(x) : std::log(x); };

  if (narrow(line)) return 60.0 / scale * lg(8.0 / u + 0.25 * u);
  return 120.0 * std::numbers::pi / (scale * (u + 1.393 + 2.0 / 3.0 * lg(u + 1.444)));
}

double line_inductance(const MicrostripLine& line, FormulaFidelity fidelity) {
  return analyze(line, fidelity).inductance_nH;
}

LineParams analyze(const MicrostripLine& line, FormulaFidelity fidelity) {
  LineParams p;
  p.eps_eff = effective_permittivity(line);
  p.z0_ohm = characteristic_impedance(line, fidelity);
  const double length_m = line.length_mm * 1e-3;
  p.inductance_nH = p.z0_ohm * std::sqrt(p.eps_eff) * length_m / kSpeedOfLight * 1e9;
  return p;
}

std::array<LineParams, 3> turn_parameters(const Substrate& substrate, double width_mm,
                                          const SpiralTurns& turns, FormulaFidelity fidelity) {
  return {analyze({substrate, width_mm, turns.inner_mm}, fidelity),
          analyze({substrate, width_mm, turns.middle_mm}, fidelity),
          analyze({substrate, width_mm, turns.outer_mm}, fidelity)};
}

}  // namespace fdrsense
