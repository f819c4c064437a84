#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fdrsense/error.hpp"
#include "fdrsense/modes.hpp"

using namespace fdrsense;

TEST_CASE("mode table matches the golden transcription") {
  std::ifstream in(FDRSENSE_TEST_DATA "/data/table1.tsv", std::ios::binary);
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(format_mode_table() == golden.str());
}

TEST_CASE("state resolution") {
  const auto m1 = resolve("00");
  CHECK(m1.mode_index == 1);
  CHECK(m1.bands == std::vector<Band>{{0.95, 0.97}, {1.53, 1.56}});
  CHECK(m1.offers(Service::Sensing));
  CHECK(m1.offers(Service::Communication));
  CHECK(m1.state_code() == "00");

  const auto m2 = resolve(DiodeState::On, DiodeState::Off);
  CHECK(m2.mode_index == 2);
  CHECK(m2.state_code() == "10");
  CHECK_FALSE(m2.offers(Service::Sensing));

  const auto m3 = resolve("11");
  CHECK(m3.bands.size() == 1);
  CHECK(m3.application == "Single-band antenna");

  CHECK_THROWS_AS(resolve("01"), Error);
  CHECK_THROWS_AS(resolve("2"), Error);
  try {
    resolve(DiodeState::Off, DiodeState::On);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedState);
  }
  CHECK(all_modes().size() == 3);
}

TEST_CASE("sensing guard") {
  CHECK(guard_sensing(resolve("00")).permitted);
  const auto d = guard_sensing(resolve("11"));
  CHECK_FALSE(d.permitted);
  CHECK(d.mode_index == 3);
  CHECK(d.reason.find("state 00") != std::string::npos);
}

TEST_CASE("dip classification") {
  DipReport r;
  r.dips = {{0.70, -12.0, {}, {}}, {0.83, -20.0, {}, {}}, {1.35, -15.0, {}, {}}, {1.8, -11.0, {}, {}}};
  const auto c1 = classify_dips(resolve("00"), r);
  REQUIRE(c1.size() == 4);
  CHECK(c1[0].role == DipRole::Unassigned);
  CHECK(c1[1].role == DipRole::Sensing);
  CHECK(c1[2].role == DipRole::Communication);
  CHECK(c1[3].role == DipRole::Unassigned);

  const auto c2 = classify_dips(resolve("10"), r);
  CHECK(c2[1].role == DipRole::Communication);
  CHECK(c2[2].role == DipRole::Communication);

  // Single-band mode has no high window.
  const auto c3 = classify_dips(resolve("11"), r);
  CHECK(c3[1].role == DipRole::Communication);
  CHECK(c3[2].role == DipRole::Unassigned);

  ClassifyWindows narrow{{0.9, 1.0}, {1.3, 1.6}};
  CHECK(classify_dips(resolve("00"), r, narrow)[1].role == DipRole::Unassigned);
}
