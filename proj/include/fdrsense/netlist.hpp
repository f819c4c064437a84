#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fdrsense/circuit.hpp"
#include "fdrsense/microstrip.hpp"

namespace fdrsense {

/// Text netlist, whitespace separated, `#` or `!` to end of line is a comment:
///
///   R <ohms> | L <nH> | C <pF> | TL <W_mm> <h_mm> <eps_r> <len_mm>
///   SER{ <element>... } | PAR{ <element>... }
///
/// Several top-level elements are joined in series. Throws NetlistSyntax with
/// the offending line number.
Element parse_netlist(std::string_view text);

/// Inverse of parse_netlist; values printed at full precision.
std::string format_netlist(const Element& net);

enum class LoadConnection { Series, Parallel };

/// Parameters of the full antenna model, read from a key=value file.
struct JcasaParams {
  double l0_nH = 0.0;
  double cc_pF = 0.0;
  DiodeModel diode;  // state is ignored; set per diode when building
  TapPlacement placement;
  double load_ohm = 50.0;  // lumped radiation loss of the resonator
  LoadConnection load_connection = LoadConnection::Series;
  Substrate substrate = kRo4003c;
  std::vector<MicrostripLine> patch;  // feed side first

  friend bool operator==(const JcasaParams&, const JcasaParams&) = default;
};

/// Keys: l0_nH, cc_pF, diode.{rs_ohm,ls_nH,ct_pF,rp_ohm},
/// placement.d1 / placement.d2 = "<fraction> <shunt|series>",
/// load_ohm, load_connection = series|parallel,
/// substrate.{eps_r,tan_delta,height_mm}, patch.<n> = "<W_mm> <len_mm>".
/// Patch segments are ordered by n. Throws NetlistSyntax.
JcasaParams parse_jcasa_params(std::string_view text);

/// Resonator with its load, behind the patch segments, for one diode state.
Element build_jcasa_model(const JcasaParams& params, DiodeState d2, DiodeState d1);

}  // namespace fdrsense
