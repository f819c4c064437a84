#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fdrsense/error.hpp"
#include "fdrsense/netlist.hpp"

using namespace fdrsense;

namespace {

std::string message_of(std::string_view text) {
  try {
    parse_netlist(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NetlistSyntax);
    return e.what();
  }
  FAIL("expected NetlistSyntax");
  return {};
}

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("single elements") {
  CHECK(parse_netlist("R 50") == Element::resistor(50.0));
  CHECK(parse_netlist("l 12.5") == Element::inductor(12.5));
  CHECK(parse_netlist("C 1e-1\n") == Element::capacitor(0.1));
  const auto tl = parse_netlist("TL 1 1.6 3.55 125");
  REQUIRE(tl.kind() == Element::Kind::LineSegment);
  CHECK(tl.segment().width_mm == 1.0);
  CHECK(tl.segment().substrate.height_mm == 1.6);
  CHECK(tl.segment().substrate.eps_r == 3.55);
  CHECK(tl.segment().length_mm == 125.0);
}

TEST_CASE("groups, comments and top-level series") {
  const char* text = R"(# 3-CSR with a tank on one side
L 64            ! first turn
C 0.429
SER{
  L 10
  PAR{ L 54 C 0.35 }
}
)";
  const auto net = parse_netlist(text);
  const auto expected = Element::series(
      {Element::inductor(64.0), Element::capacitor(0.429),
       Element::series({Element::inductor(10.0),
                        Element::parallel({Element::inductor(54.0), Element::capacitor(0.35)})})});
  CHECK(net == expected);
}

TEST_CASE("format and parse round trip") {
  const auto net = Element::series(
      {Element::line({{3.55, 0.0, 1.6}, 0.31, 43.7}),
       Element::parallel({Element::resistor(910.0),
                          Element::series({Element::inductor(0.1 + 0.2), Element::capacitor(1.0 / 3.0)})})});
  CHECK(parse_netlist(format_netlist(net)) == net);
}

TEST_CASE("syntax errors carry the line number") {
  CHECK(message_of("R 50\nQ 3").find("line 2") != std::string::npos);
  CHECK(message_of("R 50\n\nL abc").find("line 3") != std::string::npos);
  CHECK(message_of("SER{ R 1").find("never closed") != std::string::npos);
  CHECK(message_of("PAR{ }").find("no elements") != std::string::npos);
  CHECK(message_of("SER R 1").find("expected '{'") != std::string::npos);
  CHECK(message_of("TL 1 1.6 3.55").find("end of netlist") != std::string::npos);
  CHECK(message_of("R 50\nL 0").find("line 2") != std::string::npos);
  CHECK(message_of("}").find("unknown element") != std::string::npos);
  CHECK_THROWS_AS(parse_netlist("# only a comment\n"), Error);
}

TEST_CASE("shipped antenna parameter file") {
  const auto p = parse_jcasa_params(read(FDRSENSE_DATA_DIR "/jcasa_mode1.params"));
  CHECK(p.l0_nH == 154.6);
  CHECK(p.cc_pF == 0.1365);
  CHECK(p.placement.d1_connection == TapConnection::Shunt);
  CHECK(p.placement.d2_connection == TapConnection::Series);
  CHECK(p.load_connection == LoadConnection::Parallel);
  REQUIRE(p.patch.size() == 2);
  CHECK(p.patch[0].width_mm == 8.65);
  CHECK(p.patch[1].length_mm == 43.7);
  CHECK(p.patch[1].substrate == kRo4003c);
}

TEST_CASE("parameter file rules") {
  const std::string base = "l0_nH = 60\ncc_pF = 0.4\npatch.1 = 1 10\n";
  CHECK_NOTHROW(parse_jcasa_params(base));

  // Segments are ordered by index, not by position in the file.
  const auto p = parse_jcasa_params(base + "patch.0 = 2 5\nsubstrate.eps_r = 2.2\n");
  REQUIRE(p.patch.size() == 2);
  CHECK(p.patch[0].width_mm == 2.0);
  CHECK(p.patch[0].substrate.eps_r == 2.2);

  const auto code = [](const std::string& text) {
    try {
      parse_jcasa_params(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code("cc_pF = 0.4\npatch.1 = 1 10\n") == ErrorCode::NetlistSyntax);
  CHECK(code("l0_nH = 60\ncc_pF = 0.4\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "colour = red\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "l0_nH 5\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "placement.d1 = 0.5 sideways\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "patch.1 = 2 2\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "patch.x = 2 2\n") == ErrorCode::NetlistSyntax);
  CHECK(code(base + "diode.ct_pF = 0\n") == ErrorCode::InvalidValue);
  CHECK(code(base + "placement.d2 = 1.5 series\n") == ErrorCode::InvalidValue);
  CHECK(code(base + "patch.2 = -1 2\n") == ErrorCode::InvalidGeometry);
}

TEST_CASE("model building follows the diode states") {
  const auto p = parse_jcasa_params(read(FDRSENSE_DATA_DIR "/jcasa_mode1.params"));
  const auto off = build_jcasa_model(p, DiodeState::Off, DiodeState::Off);
  const auto on = build_jcasa_model(p, DiodeState::On, DiodeState::On);
  CHECK_FALSE(off == on);
  CHECK(off.kind() == Element::Kind::Series);
  CHECK(off.children().size() == 3);  // two patch segments and the resonator
}
