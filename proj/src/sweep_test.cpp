#include <doctest.h>

#include <cmath>
#include <string>

#include "fdrsense/circuit.hpp"
#include "fdrsense/error.hpp"
#include "fdrsense/sweep.hpp"
#include "synth.hpp"

using namespace fdrsense;
using namespace fdrsense::testing;

namespace {

template <typename F>
std::pair<ErrorCode, std::string> failure(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  FAIL("expected an Error");
  return {ErrorCode::Io, {}};
}

}  // namespace

TEST_CASE("Touchstone field mapping") {
  const auto ri = parse_touchstone("# GHz S RI R 50\n0.93 -0.9 0.0\n0.94 -0.8 0.1\n");
  REQUIRE(ri.points.size() == 2);
  CHECK(ri.points[0].f_GHz == 0.93);
  CHECK(ri.points[0].gamma == Complex{-0.9, 0.0});
  CHECK(ri.source_format == SweepFormat::TouchstoneRI);

  const auto db = parse_touchstone("! exported\n# MHz S DB R 50\n930 -20 0\n940 -10 0\n");
  CHECK(db.points[0].f_GHz == doctest::Approx(0.93).epsilon(1e-15));
  CHECK(std::abs(db.points[0].gamma) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(std::arg(db.points[0].gamma) == 0.0);

  const auto ma = parse_touchstone("# hz s ma r 75\n1e9 0.5 90\n2e9 0.5 -90\n");
  CHECK(ma.points[0].f_GHz == 1.0);
  CHECK(ma.points[0].gamma.imag() == doctest::Approx(0.5));
  CHECK(std::abs(ma.points[0].gamma.real()) < 1e-15);
  CHECK(ma.reference_ohm == 75.0);

  const auto khz = parse_touchstone("# kHz S RI\n1000000 0.1 0\n2000000 0.2 0\n");
  CHECK(khz.points[1].f_GHz == 2.0);

  // No option line: GHz, MA, 50 ohm.
  const auto bare = parse_touchstone("1.0 0.5 180\n1.1 0.5 0\n");
  CHECK(bare.source_format == SweepFormat::TouchstoneMA);
  CHECK(bare.points[0].gamma.real() == doctest::Approx(-0.5));
  CHECK(bare.reference_ohm == 50.0);
}

TEST_CASE("Touchstone validation") {
  auto [c1, m1] = failure([] { parse_touchstone("# GHz S RI R 50\n0.95 0 0\n0.94 0 0\n0.96 0 0\n"); });
  CHECK(c1 == ErrorCode::NonMonotoneFrequency);
  CHECK(m1.find("line 3") != std::string::npos);

  auto [c2, m2] = failure([] { parse_touchstone("# GHz S RI R 50\n0.9 0 0\n1.0 0 0 7\n"); });
  CHECK(c2 == ErrorCode::BadFieldCount);
  CHECK(m2.find("line 3") != std::string::npos);

  CHECK(failure([] { parse_touchstone("# GHz S RI R 50\n0.9 0 x\n1.0 0 0\n"); }).first == ErrorCode::BadFieldCount);
  CHECK(failure([] { parse_touchstone("1 0 0 0 0 0 0 0 0\n"); }).first == ErrorCode::UnsupportedPortCount);
  CHECK(failure([] { parse_touchstone("# GHz Z RI R 50\n1 0 0\n2 0 0\n"); }).first == ErrorCode::MalformedOptionLine);
  CHECK(failure([] { parse_touchstone("# THz S RI\n1 0 0\n2 0 0\n"); }).first == ErrorCode::MalformedOptionLine);
  CHECK(failure([] { parse_touchstone("# GHz S RI R -5\n1 0 0\n2 0 0\n"); }).first == ErrorCode::MalformedOptionLine);
  CHECK(failure([] { parse_touchstone("1 0 0\n# GHz S RI\n2 0 0\n"); }).first == ErrorCode::MalformedOptionLine);
  CHECK(failure([] { parse_touchstone("[Version] 2.0\n"); }).first == ErrorCode::MalformedOptionLine);
  CHECK(failure([] { parse_touchstone("# GHz S RI R 50\n1 0 0\n"); }).first == ErrorCode::TooFewPoints);
  CHECK(failure([] { parse_sweep("1 0 0\n2 0 0\n", "two.s2p"); }).first == ErrorCode::UnsupportedPortCount);
}

TEST_CASE("CSV sweeps") {
  const auto s = parse_csv("freq_ghz,s11_db\n0.95,-3\n0.96,-18\n0.97,-3\n");
  REQUIRE(s.points.size() == 3);
  CHECK(s.source_format == SweepFormat::CsvDb);
  CHECK(std::abs(s.points[1].gamma) == doctest::Approx(std::pow(10.0, -18.0 / 20.0)));

  CHECK(failure([] { parse_csv("freq_ghz,s11_db\n0.95,-3\n"); }).first == ErrorCode::TooFewPoints);
  auto [code, msg] = failure([] { parse_csv("freq_ghz,s11_db\n0.95,-3\n0.96,abc\n"); });
  CHECK(code == ErrorCode::BadFieldCount);
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(failure([] { parse_csv("f,db\n1,2\n"); }).first == ErrorCode::MissingHeader);
  CHECK(failure([] { parse_csv(""); }).first == ErrorCode::MissingHeader);
  CHECK(failure([] { parse_csv("freq_ghz,s11_db\n1,-3,4\n"); }).first == ErrorCode::BadFieldCount);
}

TEST_CASE("content sniffing") {
  CHECK(parse_sweep("freq_ghz,s11_db\n1,-3\n2,-4\n").source_format == SweepFormat::CsvDb);
  CHECK(parse_sweep("! c\n1 0.1 0\n2 0.1 0\n").source_format == SweepFormat::TouchstoneMA);
  CHECK(failure([] { parse_sweep("1,-3\n2,-4\n", "x.csv"); }).first == ErrorCode::MissingHeader);
  CHECK(failure([] { load_sweep("/nonexistent/trace.s1p"); }).second.find("trace.s1p") != std::string::npos);
}

TEST_CASE("write and re-read keeps every point") {
  const auto src = lorentz_sweep(0.8, 0.0013, 200, {{0.93, -25.0, 0.01}});
  auto phased = src;
  for (std::size_t i = 0; i < phased.points.size(); ++i) {
    phased.points[i].gamma *= std::polar(1.0, 0.01 * static_cast<double>(i));
  }
  for (auto fmt : {SweepFormat::TouchstoneRI, SweepFormat::TouchstoneMA, SweepFormat::TouchstoneDB}) {
    const auto back = parse_touchstone(write_touchstone(phased, fmt));
    REQUIRE(back.points.size() == phased.points.size());
    CHECK(back.source_format == fmt);
    for (std::size_t i = 0; i < back.points.size(); ++i) {
      CHECK(back.points[i].f_GHz == phased.points[i].f_GHz);
      CHECK(std::abs(back.points[i].gamma - phased.points[i].gamma) <= 1e-9 * std::abs(phased.points[i].gamma));
    }
  }
}

TEST_CASE("Lorentzian dip is recovered on a 1 MHz grid") {
  const auto s = lorentz_sweep(0.80, 0.001, 261, {{0.930, -25.0, 0.008}});
  const auto r = detect_dips(s);
  REQUIRE(r.dips.size() == 1);
  CHECK(std::abs(r.dips[0].f0_GHz - 0.930) <= 0.0005);
  CHECK(r.dips[0].depth_dB < -10.0);
  REQUIRE(r.dips[0].band_lo_GHz);
  REQUIRE(r.dips[0].band_hi_GHz);
  CHECK(*r.dips[0].band_lo_GHz < r.dips[0].f0_GHz);
  CHECK(r.dips[0].f0_GHz < *r.dips[0].band_hi_GHz);

  // Off-grid centre.
  const auto off = lorentz_sweep(0.80, 0.001, 261, {{0.93037, -25.0, 0.008}});
  CHECK(std::abs(detect_dips(off).dips[0].f0_GHz - 0.93037) <= 0.0005);
}

TEST_CASE("flat trace has no dip") {
  FrequencySweep flat;
  for (int i = 0; i < 50; ++i) flat.points.push_back({0.9 + 0.001 * i, {std::pow(10.0, -3.0 / 20.0), 0.0}});
  CHECK(failure([&] { detect_dips(flat); }).first == ErrorCode::NoDipFound);
  CHECK(failure([&] { detect_dips(flat, 0.0); }).first == ErrorCode::InvalidValue);
}

TEST_CASE("two dips come back in ascending order") {
  const auto r = detect_dips(lorentz_sweep(0.5, 0.001, 1501, {{1.55, -20.0, 0.01}, {0.96, -30.0, 0.01}}));
  REQUIRE(r.dips.size() == 2);
  CHECK(r.dips[0].f0_GHz == doctest::Approx(0.96).epsilon(5e-4));
  CHECK(r.dips[1].f0_GHz == doctest::Approx(1.55).epsilon(5e-4));
}

TEST_CASE("band edges of the mode-1 trace") {
  const auto s = mode1_trace();
  const auto [lo1, hi1] = band_at_threshold(s, 0.96);
  CHECK(std::abs(lo1 - 0.95) <= 0.002);
  CHECK(std::abs(hi1 - 0.97) <= 0.002);
  const auto [lo2, hi2] = band_at_threshold(s, 1.545);
  CHECK(std::abs(lo2 - 1.53) <= 0.002);
  CHECK(std::abs(hi2 - 1.56) <= 0.002);

  const auto r = detect_dips(s);
  REQUIRE(r.dips.size() == 2);
  CHECK(*r.dips[0].band_lo_GHz == doctest::Approx(lo1).epsilon(1e-12));
  CHECK(*r.dips[1].band_hi_GHz == doctest::Approx(hi2).epsilon(1e-12));
}

TEST_CASE("band errors") {
  // Shallow dip: never reaches -10 dB.
  const auto shallow = lorentz_sweep(0.8, 0.001, 300, {{0.93, -6.0, 0.01}});
  CHECK(failure([&] { band_at_threshold(shallow, 0.93); }).first == ErrorCode::NoDipFound);
  CHECK(failure([&] { detect_dips(shallow); }).first == ErrorCode::NoDipFound);

  // Dip cut off by the end of the sweep.
  const auto cut = lorentz_sweep(0.928, 0.001, 60, {{0.93, -25.0, 0.01}});
  CHECK(failure([&] { band_at_threshold(cut, 0.93); }).first == ErrorCode::EdgeNotInSpan);
  const auto r = detect_dips(cut);
  REQUIRE(r.dips.size() == 1);
  CHECK_FALSE(r.dips[0].band_lo_GHz.has_value());
  CHECK(r.dips[0].band_hi_GHz.has_value());
}

TEST_CASE("adjacent minima within two grid steps merge into the deeper one") {
  FrequencySweep s;
  const double db[] = {-3, -3, -15, -14, -16, -3, -3};
  for (int i = 0; i < 7; ++i) s.points.push_back({1.0 + 0.001 * i, {std::pow(10.0, db[i] / 20.0), 0.0}});
  const auto r = detect_dips(s);
  REQUIRE(r.dips.size() == 1);
  CHECK(r.dips[0].f0_GHz == doctest::Approx(1.004).epsilon(1e-3));
}

TEST_CASE("synthesis from a circuit") {
  const auto rlc = Element::series({Element::resistor(50.0), Element::inductor(64.0), Element::capacitor(0.429)});
  const auto s = sweep_from_network(rlc, 0.5, 1.5, 1001);
  CHECK(s.points.front().f_GHz == 0.5);
  CHECK(s.points.back().f_GHz == 1.5);
  const auto r = detect_dips(s);
  REQUIRE(r.dips.size() == 1);
  CHECK(r.dips[0].f0_GHz == doctest::Approx(0.9605).epsilon(1e-3));
}

TEST_CASE("repeatability comparison") {
  DipReport ref{{{0.930, -20.0, {}, {}}, {1.540, -18.0, {}, {}}}, -10.0};
  DipReport rep{{{0.936, -20.0, {}, {}}, {1.555, -18.0, {}, {}}}, -10.0};
  const auto e = compare_repeatability(ref, rep);
  REQUIRE(e.size() == 2);
  CHECK(e[0].difference_MHz == doctest::Approx(6.0));
  CHECK_FALSE(e[0].exceeds);
  CHECK(e[1].difference_MHz == doctest::Approx(15.0));
  CHECK(e[1].exceeds);
  CHECK(compare_repeatability(ref, rep, 20.0)[1].exceeds == false);

  const auto none = compare_repeatability(ref, DipReport{});
  CHECK(std::isnan(none[0].f_repeat_GHz));
  CHECK(std::isnan(none[0].difference_MHz));
  CHECK(none[0].exceeds);
}
