#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "fdrsense/microstrip.hpp"

namespace fdrsense {

using Complex = std::complex<double>;

// Two-terminal element tree. Values are immutable after construction and the
// tree is held by value, so copies are deep and independent.
//
// Units at this interface: ohms, nanohenries, picofarads, millimetres.
//
// A LineSegment inside a Series is terminated by everything that follows it
// in that Series; with nothing downstream it is an open-circuited stub.
class Element {
 public:
  enum class Kind { Resistor, Inductor, Capacitor, Series, Parallel, LineSegment };

  static Element resistor(double ohms);
  static Element inductor(double nH);
  static Element capacitor(double pF);
  static Element series(std::vector<Element> parts);
  static Element parallel(std::vector<Element> parts);
  static Element line(const MicrostripLine& segment);

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  const std::vector<Element>& children() const noexcept { return children_; }
  const MicrostripLine& segment() const noexcept { return segment_; }

  bool is_composite() const noexcept { return kind_ == Kind::Series || kind_ == Kind::Parallel; }

  /// True when the tree contains no resistor at any depth.
  bool is_reactive() const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  Element(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_ = 0.0;
  std::vector<Element> children_;
  MicrostripLine segment_{};
};

struct Abcd {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};
  Complex c{0.0, 0.0};
  Complex d{1.0, 0.0};

  Complex determinant() const { return a * d - b * c; }
  Complex input_impedance(Complex load) const { return (a * load + b) / (c * load + d); }
};

Abcd operator*(const Abcd& lhs, const Abcd& rhs);

/// Lossless line: cos(bl), j Z0 sin(bl), j sin(bl)/Z0, cos(bl) with b = 2 pi f sqrt(eps_eff)/c.
Abcd abcd_of_line(const MicrostripLine& segment, double f_GHz,
                  FormulaFidelity fidelity = FormulaFidelity::Standard);

Complex impedance(const Element& net, double f_GHz,
                  FormulaFidelity fidelity = FormulaFidelity::Standard);

Complex reflection(const Element& net, double f_GHz, double z_ref_ohm = 50.0,
                   FormulaFidelity fidelity = FormulaFidelity::Standard);

enum class ResonanceMethod { ReactanceZero, ReflectionDip };

struct ResonanceOptions {
  double z_ref_ohm = 50.0;
  double threshold_dB = -10.0;   // ReflectionDip only
  double tolerance_GHz = 1e-6;   // ReactanceZero bisection width
  FormulaFidelity fidelity = FormulaFidelity::Standard;
};

struct ResonanceReport {
  std::vector<double> frequencies_GHz;
  ResonanceMethod method = ResonanceMethod::ReactanceZero;
  double reference_ohm = 50.0;

  friend bool operator==(const ResonanceReport&, const ResonanceReport&) = default;
};

/// Scans a uniform grid over [lo, hi] and refines each hit.
///
/// ReactanceZero brackets the rising (-/+) sign changes of Im Z, the series
/// resonances of a passive one-port; falling changes are poles and are skipped.
/// ReflectionDip takes strict local minima of 20 log10|Gamma| under the
/// threshold and refines them with a three-point parabola. Hits closer than
/// two grid steps are merged. Throws NoResonanceFound on an empty result.
ResonanceReport find_resonances(const Element& net, double lo_GHz, double hi_GHz,
                                int grid_points, ResonanceMethod method,
                                const ResonanceOptions& options = {});

// ---------------------------------------------------------------------------
// Resonator models

enum class DiodeState { Off, On };

/// Lumped PIN diode. On: R_s + L_s. Off: L_s in series with (C_t || R_p).
struct DiodeModel {
  DiodeState state = DiodeState::Off;
  double r_s_ohm = 1.0;
  double l_s_nH = 0.7;
  double c_t_pF = 0.35;
  double r_p_ohm = 5000.0;

  void validate() const;
  Element network() const;

  friend bool operator==(const DiodeModel&, const DiodeModel&) = default;
};

/// Datasheet-typical values for a low-resistance SMP1322-class switch diode.
/// These are not taken from the antenna design and should be replaced with
/// characterised values when available.
DiodeModel typical_pin_diode(DiodeState state);

/// How a diode joins its arm of the spiral.
///   Shunt:  across the tapped fraction of L0 (shorting it when On).
///   Series: inserted into the inductive path at the tap.
enum class TapConnection { Shunt, Series };

struct TapPlacement {
  double d1_fraction = 0.5;
  double d2_fraction = 0.5;
  TapConnection d1_connection = TapConnection::Shunt;
  TapConnection d2_connection = TapConnection::Shunt;

  void validate() const;

  friend bool operator==(const TapPlacement&, const TapPlacement&) = default;
};

/// Two L0 in series with Cc between them.
Element build_3csr(double l0_nH, double cc_pF);

/// 3-CSR with D1 on the first L0 and D2 on the second, per placement.
Element build_3rcsr(double l0_nH, double cc_pF, const DiodeModel& d1, const DiodeModel& d2,
                    const TapPlacement& placement = {});

/// Patch segments cascaded in order from the feed, terminated by the resonator.
Element build_jcasa(const std::vector<MicrostripLine>& patch_segments, const Element& resonator);

}  // namespace fdrsense
