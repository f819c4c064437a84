#pragma once

#include <array>

// Closed-form quasi-TEM microstrip analysis. Geometry is given in millimetres
// at the interface and converted to SI internally.

namespace fdrsense {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct Substrate {
  double eps_r = 1.0;
  double tan_delta = 0.0;
  double height_mm = 1.0;

  friend bool operator==(const Substrate&, const Substrate&) = default;
};

/// Rogers RO4003C as used for the antenna board (1.6 mm core).
inline constexpr Substrate kRo4003c{3.55, 0.0027, 1.6};

struct MicrostripLine {
  Substrate substrate;
  double width_mm = 1.0;
  double length_mm = 0.0;

  friend bool operator==(const MicrostripLine&, const MicrostripLine&) = default;
};

struct LineParams {
  double eps_eff = 1.0;
  double z0_ohm = 0.0;
  double inductance_nH = 0.0;

  friend bool operator==(const LineParams&, const LineParams&) = default;
};

/// Which form of the impedance expression to evaluate.
///
/// Standard is the textbook Hammerstad-style form (natural log, 60/sqrt(eps_eff)).
/// PaperLiteral keeps the typeset variant (log base 2, 60/eps_eff) so results
/// quoted from that form can be traced; it is not physically calibrated.
enum class FormulaFidelity { Standard, PaperLiteral };

/// Throws Error(InvalidGeometry) unless every field is finite and in range.
void validate(const MicrostripLine& line);

/// Narrow (W < h) branch includes the 0.04 (1 - W/h)^2 correction; W >= h uses the wide branch.
double effective_permittivity(const MicrostripLine& line);

double characteristic_impedance(const MicrostripLine& line,
                                FormulaFidelity fidelity = FormulaFidelity::Standard);

/// Series inductance of the segment, L = Z0 sqrt(eps_eff) l / c, in nH.
double line_inductance(const MicrostripLine& line,
                       FormulaFidelity fidelity = FormulaFidelity::Standard);

LineParams analyze(const MicrostripLine& line,
                   FormulaFidelity fidelity = FormulaFidelity::Standard);

/// Conductor lengths of the three spiral turns, innermost first. The middle
/// turn is not a measured value; it defaults to the midpoint of the other two.
struct SpiralTurns {
  double inner_mm = 125.0;
  double middle_mm = 132.5;
  double outer_mm = 140.0;
};

/// Per-turn line parameters for a conductor of `width_mm` on `substrate`.
std::array<LineParams, 3> turn_parameters(const Substrate& substrate, double width_mm,
                                          const SpiralTurns& turns = {},
                                          FormulaFidelity fidelity = FormulaFidelity::Standard);

}  // namespace fdrsense
