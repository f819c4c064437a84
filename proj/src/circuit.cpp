#include "fdrsense/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dip_search.hpp"
#include "fdrsense/error.hpp"

namespace fdrsense {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(const char* what, double v) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << v;
    throw Error(ErrorCode::InvalidValue, msg.str());
  }
}

void require_frequency(double f_GHz) {
  if (!std::isfinite(f_GHz) || f_GHz <= 0.0) {
    std::ostringstream msg;
    msg << "frequency must be positive, got " << f_GHz << " GHz";
    throw Error(ErrorCode::NonPositiveFrequency, msg.str());
  }
}

Complex parallel_combine(const std::vector<Complex>& branches) {
  Complex admittance{0.0, 0.0};
  for (const Complex& z : branches) {
    if (z == Complex{0.0, 0.0}) return z;  // a short across the group
    admittance += 1.0 / z;
  }
  if (admittance == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::DegenerateNetwork, "parallel group is an ideal open at this frequency");
  }
  return 1.0 / admittance;
}

Complex open_stub(const Abcd& m) {
  if (m.c == Complex{0.0, 0.0}) {
    throw Error(ErrorCode::DegenerateNetwork,
                "unterminated zero-length line segment is an ideal open");
  }
  return m.a / m.c;
}

Complex evaluate(const Element& e, double omega, double f_GHz, FormulaFidelity fidelity) {
  switch (e.kind()) {
    case Element::Kind::Resistor:
      return {e.value(), 0.0};
    case Element::Kind::Inductor:
      return {0.0, omega * e.value() * 1e-9};
    case Element::Kind::Capacitor:
      return {0.0, -1.0 / (omega * e.value() * 1e-12)};
    case Element::Kind::LineSegment:
      return open_stub(abcd_of_line(e.segment(), f_GHz, fidelity));
    case Element::Kind::Series: {
      // Right to left so each line segment sees its downstream termination.
      std::optional<Complex> tail;
      const auto& parts = e.children();
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        if (it->kind() == Element::Kind::LineSegment) {
          const Abcd m = abcd_of_line(it->segment(), f_GHz, fidelity);
          tail = tail ? m.input_impedance(*tail) : open_stub(m);
        } else {
          tail = tail.value_or(Complex{0.0, 0.0}) + evaluate(*it, omega, f_GHz, fidelity);
        }
      }
      return *tail;
    }
    case Element::Kind::Parallel: {
      std::vector<Complex> branches;
      branches.reserve(e.children().size());
      for (const auto& child : e.children()) {
        branches.push_back(evaluate(child, omega, f_GHz, fidelity));
      }
      return parallel_combine(branches);
    }
  }
  return {};
}

Element arm(double l0_nH, const DiodeModel& diode, double fraction, TapConnection connection) {
  const double tapped = l0_nH * fraction;
  const double rest = l0_nH - tapped;
  std::vector<Element> parts;
  if (connection == TapConnection::Shunt) {
    if (rest > 0.0) parts.push_back(Element::inductor(rest));
    parts.push_back(Element::parallel({Element::inductor(tapped), diode.network()}));
  } else {
    if (tapped > 0.0) parts.push_back(Element::inductor(tapped));
    parts.push_back(diode.network());
    if (rest > 0.0) parts.push_back(Element::inductor(rest));
  }
  if (parts.size() == 1) return parts.front();
  return Element::series(std::move(parts));
}

}  // namespace

// ---------------------------------------------------------------------------

Element Element::resistor(double ohms) {
  require_positive("resistance", ohms);
  return Element(Kind::Resistor, ohms);
}

Element Element::inductor(double nH) {
  require_positive("inductance", nH);
  return Element(Kind::Inductor, nH);
}

Element Element::capacitor(double pF) {
  require_positive("capacitance", pF);
  return Element(Kind::Capacitor, pF);
}

Element Element::series(std::vector<Element> parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyNetwork, "series group has no elements");
  Element e(Kind::Series, 0.0);
  e.children_ = std::move(parts);
  return e;
}

Element Element::parallel(std::vector<Element> parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyNetwork, "parallel group has no elements");
  Element e(Kind::Parallel, 0.0);
  e.children_ = std::move(parts);
  return e;
}

Element Element::line(const MicrostripLine& segment) {
  validate(segment);
  Element e(Kind::LineSegment, 0.0);
  e.segment_ = segment;
  return e;
}

bool Element::is_reactive() const {
  if (kind_ == Kind::Resistor) return false;
  return std::all_of(children_.begin(), children_.end(),
                     [](const Element& c) { return c.is_reactive(); });
}

Abcd operator*(const Abcd& l, const Abcd& r) {
  return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
          l.c * r.b + l.d * r.d};
}

Abcd abcd_of_line(const MicrostripLine& segment, double f_GHz, FormulaFidelity fidelity) {
  require_frequency(f_GHz);
  const LineParams p = analyze(segment, fidelity);
  const double beta = kTwoPi * f_GHz * 1e9 * std::sqrt(p.eps_eff) / kSpeedOfLight;
  const double theta = beta * segment.length_mm * 1e-3;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  return {Complex{cs, 0.0}, Complex{0.0, p.z0_ohm * sn}, Complex{0.0, sn / p.z0_ohm},
          Complex{cs, 0.0}};
}

Complex impedance(const Element& net, double f_GHz, FormulaFidelity fidelity) {
  require_frequency(f_GHz);
  return evaluate(net, kTwoPi * f_GHz * 1e9, f_GHz, fidelity);
}

Complex reflection(const Element& net, double f_GHz, double z_ref_ohm,
                   FormulaFidelity fidelity) {
  require_positive("reference impedance", z_ref_ohm);
  const Complex z = impedance(net, f_GHz, fidelity);
  return (z - z_ref_ohm) / (z + z_ref_ohm);
}

// ---------------------------------------------------------------------------

ResonanceReport find_resonances(const Element& net, double lo_GHz, double hi_GHz,
                                int grid_points, ResonanceMethod method,
                                const ResonanceOptions& options) {
  require_frequency(lo_GHz);
  if (!(hi_GHz > lo_GHz) || !std::isfinite(hi_GHz)) {
    throw Error(ErrorCode::InvalidValue, "span upper bound must exceed the lower bound");
  }
  if (grid_points < 16) {
    throw Error(ErrorCode::InvalidValue, "resonance scan needs at least 16 grid points");
  }
  require_positive("reference impedance", options.z_ref_ohm);

  const auto n = static_cast<std::size_t>(grid_points);
  const double step = (hi_GHz - lo_GHz) / static_cast<double>(n - 1);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = lo_GHz + step * static_cast<double>(i);
  grid.back() = hi_GHz;

  ResonanceReport report;
  report.method = method;
  report.reference_ohm = options.z_ref_ohm;

  if (method == ResonanceMethod::ReactanceZero) {
    const auto reactance = [&](double f) { return impedance(net, f, options.fidelity).imag(); };
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = reactance(grid[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (x[i] == 0.0) {
        // Exact hit: accept if the reactance is rising through it.
        const bool rising = (i == 0 || x[i - 1] < 0.0) && x[i + 1] > 0.0;
        if (rising) roots.push_back(grid[i]);
        continue;
      }
      if (!(x[i] < 0.0 && x[i + 1] > 0.0)) continue;
      double a = grid[i];
      double b = grid[i + 1];
      while (b - a > options.tolerance_GHz) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        if (reactance(mid) < 0.0) a = mid;
        else b = mid;
      }
      roots.push_back(0.5 * (a + b));
    }
    if (x[n - 1] == 0.0 && n >= 2 && x[n - 2] < 0.0) roots.push_back(grid[n - 1]);

    for (double r : roots) {
      if (!report.frequencies_GHz.empty() && r - report.frequencies_GHz.back() < 2.0 * step) {
        continue;
      }
      report.frequencies_GHz.push_back(r);
    }
  } else {
    std::vector<double> level(n);
    for (std::size_t i = 0; i < n; ++i) {
      level[i] = detail::to_dB(std::abs(reflection(net, grid[i], options.z_ref_ohm, options.fidelity)));
    }
    for (const auto& dip : detail::locate_dips(grid, level, options.threshold_dB)) {
      report.frequencies_GHz.push_back(dip.f0);
    }
  }

  if (report.frequencies_GHz.empty()) {
    std::ostringstream msg;
    msg << "no resonance in [" << lo_GHz << ", " << hi_GHz << "] GHz";
    throw Error(ErrorCode::NoResonanceFound, msg.str());
  }
  return report;
}

// ---------------------------------------------------------------------------

void DiodeModel::validate() const {
  require_positive("diode r_s", r_s_ohm);
  require_positive("diode l_s", l_s_nH);
  require_positive("diode c_t", c_t_pF);
  require_positive("diode r_p", r_p_ohm);
}

Element DiodeModel::network() const {
  validate();
  if (state == DiodeState::On) {
    return Element::series({Element::resistor(r_s_ohm), Element::inductor(l_s_nH)});
  }
  return Element::series(
      {Element::inductor(l_s_nH),
       Element::parallel({Element::capacitor(c_t_pF), Element::resistor(r_p_ohm)})});
}

DiodeModel typical_pin_diode(DiodeState state) {
  DiodeModel d;
  d.state = state;
  return d;
}

void TapPlacement::validate() const {
  const auto check = [](double p, TapConnection c, const char* which) {
    const bool ok = c == TapConnection::Shunt ? (p > 0.0 && p <= 1.0) : (p >= 0.0 && p <= 1.0);
    if (!std::isfinite(p) || !ok) {
      std::ostringstream msg;
      msg << which << " tap fraction " << p << " is outside the inductor";
      throw Error(ErrorCode::InvalidValue, msg.str());
    }
  };
  check(d1_fraction, d1_connection, "D1");
  check(d2_fraction, d2_connection, "D2");
}

Element build_3csr(double l0_nH, double cc_pF) {
  return Element::series(
      {Element::inductor(l0_nH), Element::capacitor(cc_pF), Element::inductor(l0_nH)});
}

Element build_3rcsr(double l0_nH, double cc_pF, const DiodeModel& d1, const DiodeModel& d2,
                    const TapPlacement& placement) {
  require_positive("L0", l0_nH);
  require_positive("Cc", cc_pF);
  d1.validate();
  d2.validate();
  placement.validate();
  return Element::series({arm(l0_nH, d1, placement.d1_fraction, placement.d1_connection),
                          Element::capacitor(cc_pF),
                          arm(l0_nH, d2, placement.d2_fraction, placement.d2_connection)});
}

Element build_jcasa(const std::vector<MicrostripLine>& patch_segments, const Element& resonator) {
  if (patch_segments.empty()) {
    throw Error(ErrorCode::EmptyNetwork, "JCASA model needs at least one patch segment");
  }
  std::vector<Element> chain;
  chain.reserve(patch_segments.size() + 1);
  for (const auto& seg : patch_segments) chain.push_back(Element::line(seg));
  chain.push_back(resonator);
  return Element::series(std::move(chain));
}

}  // namespace fdrsense
