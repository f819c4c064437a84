#include <doctest.h>

#include <cmath>
#include <limits>

#include "fdrsense/error.hpp"
#include "json_io.hpp"

using namespace fdrsense;

namespace {

template <typename T>
T round_trip(const T& v) {
  return Json::parse(Json(v).dump()).get<T>();
}

}  // namespace

TEST_CASE("result types survive a round trip") {
  const Substrate s{3.55, 0.0027, 1.6};
  CHECK(round_trip(s) == s);
  const MicrostripLine line{s, 1.0, 125.0};
  CHECK(round_trip(line) == line);
  const LineParams p{2.7, 81.3, 53.1};
  CHECK(round_trip(p) == p);
  const ResonanceReport rr{{0.96, 1.5}, ResonanceMethod::ReflectionDip, 75.0};
  CHECK(round_trip(rr) == rr);
  const DipReport dr{{{0.95, -20.0, 0.94, 0.96}, {1.5, -12.0, std::nullopt, 1.52}}, -10.0};
  CHECK(round_trip(dr) == dr);
  const CalibrationModel m{0.95, -150.0, -1.0, 0.2};
  CHECK(round_trip(m) == m);
  const Estimate e{-0.05, 6.6, 12.0, false};
  CHECK(round_trip(e) == e);
  for (const auto& mode : all_modes()) CHECK(round_trip(mode) == mode);
  const ClassifiedDip c{0.83, DipRole::Sensing};
  CHECK(round_trip(c) == c);
}

TEST_CASE("missing band edges and unpaired repeats serialise as null") {
  const Json d = Dip{1.0, -15.0, std::nullopt, 1.1};
  CHECK(d.at("band_lo_GHz").is_null());
  CHECK(d.at("band_hi_GHz") == 1.1);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const Json r = RepeatabilityEntry{0.93, nan, nan, true};
  CHECK(r.at("f_repeat_GHz").is_null());
  const auto back = r.get<RepeatabilityEntry>();
  CHECK(std::isnan(back.difference_MHz));
  CHECK(back.exceeds);
}

TEST_CASE("key order is fixed") {
  CHECK(dump(Json(Estimate{-0.03, 3.7, 0.0, false})) ==
        "{\n  \"delta_f_GHz\": -0.03,\n  \"eps_r_real\": 3.7,\n  \"vwc_percent\": 0.0,\n"
        "  \"extrapolated\": false\n}\n");
  CHECK(Json(resolve("10")).dump() ==
        R"({"state":"10","mode":2,"bands":[{"lo_GHz":0.91,"hi_GHz":0.94},{"lo_GHz":1.54,"hi_GHz":1.57}],)"
        R"("services":["communication"],"application":"Dual-band antenna"})");
}

TEST_CASE("model files") {
  const auto m = default_calibration_model();
  const auto text = model_to_json_text(m);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(model_from_json_text(text) == m);

  const auto code = [](std::string_view t) {
    try {
      model_from_json_text(t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code("{") == ErrorCode::InvalidModel);
  CHECK(code(R"({"schema_version":2,"model":{}})") == ErrorCode::InvalidModel);
  CHECK(code(R"({"schema_version":1,"model":{"f_u_GHz":0.96}})") == ErrorCode::InvalidModel);
  CHECK(code(R"({"schema_version":1,"model":{"f_u_GHz":0.96,"slope":0,"intercept":1,"fit_residual":0}})") ==
        ErrorCode::InvalidModel);
}

TEST_CASE("unknown enum names are rejected") {
  CHECK_THROWS(Json::parse(R"({"f0_GHz":1,"role":"radar"})").get<ClassifiedDip>());
  CHECK_THROWS_AS(Json::parse(R"({"state":"01","mode":1,"bands":[],"services":[],"application":""})").get<ModeState>(),
                  Error);
}
