#include <doctest.h>

#include <cmath>

#include "fdrsense/calibration.hpp"
#include "fdrsense/error.hpp"

using namespace fdrsense;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::Io;
}

}  // namespace

TEST_CASE("two-point fit through the loaded endpoints") {
  const auto m = fit_linear({{-0.03, 3.7}, {-0.13, 19.0}}, 0.96);
  CHECK(m.slope == doctest::Approx(-153.0).epsilon(1e-12));
  CHECK(m.intercept == doctest::Approx(-0.89).epsilon(1e-12));
  CHECK(m.fit_residual == 0.0);
  CHECK(m == default_calibration_model());
}

TEST_CASE("least squares residual") {
  const auto m = fit_linear({{0.0, 1.0}, {1.0, 3.0}, {2.0, 5.0}, {3.0, 7.5}}, 1.0);
  CHECK(m.slope == doctest::Approx(2.15));
  CHECK(m.fit_residual > 0.0);
  CHECK(code_of([] { fit_linear({{0.1, 2.0}}, 1.0); }) == ErrorCode::DegenerateFit);
  CHECK(code_of([] { fit_linear({{0.1, 2.0}, {0.1, 3.0}}, 1.0); }) == ErrorCode::DegenerateFit);
}

TEST_CASE("soil table interpolation") {
  const auto& t = default_soil_table();
  REQUIRE(t.rows().size() == 7);
  CHECK(t.vwc_at(5.1) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(std::abs(t.vwc_at(5.1) - 7.5) <= 1e-9);
  CHECK(t.permittivity_at(7.5) == doctest::Approx(5.1));
  CHECK(t.vwc_at(3.7) == 0.0);
  CHECK(t.vwc_at(19.0) == 30.0);
  CHECK(t.vwc_at(1.0) == 0.0);
  CHECK(t.vwc_at(40.0) == 30.0);
  for (const auto& r : t.rows()) CHECK(t.vwc_at(r.eps_r_real) == doctest::Approx(r.vwc_percent));

  CHECK(code_of([] { SoilTable({{0, 3.0}}); }) == ErrorCode::InvalidTable);
  CHECK(code_of([] { SoilTable({{0, 3.0}, {5, 3.0}}); }) == ErrorCode::InvalidTable);
  CHECK(code_of([] { SoilTable({{5, 3.0}, {0, 4.0}}); }) == ErrorCode::InvalidTable);
}

TEST_CASE("estimates at the endpoints") {
  const auto m = default_calibration_model();
  const auto dry = estimate(0.93, m);
  CHECK(dry.delta_f_GHz == doctest::Approx(-0.03));
  CHECK(dry.eps_r_real == doctest::Approx(3.7));
  CHECK(std::abs(dry.vwc_percent) <= 1e-9);
  CHECK_FALSE(estimate(0.9, m).extrapolated);
  const auto wet = estimate(0.83, m);
  CHECK(wet.eps_r_real == doctest::Approx(19.0));
  CHECK(wet.vwc_percent == doctest::Approx(30.0));

  const auto beyond = estimate(0.80, m);
  CHECK(beyond.extrapolated);
  CHECK(beyond.vwc_percent == 30.0);
  CHECK(beyond.eps_r_real > 19.0);

  CHECK(code_of([&] { estimate(0.0, m); }) == ErrorCode::NonPositiveFrequency);
  CHECK(code_of([] { estimate(0.9, CalibrationModel{0.96, 0.0, 1.0, 0.0}); }) == ErrorCode::InvalidModel);
  CHECK(code_of([] { estimate(0.9, CalibrationModel{-1.0, 2.0, 1.0, 0.0}); }) == ErrorCode::InvalidModel);
}

TEST_CASE("sensitivity figures") {
  CHECK(sensitivity(0.93, 0.83, 3.7, 19.0, 0.95) == doctest::Approx(0.68799449604403165).epsilon(1e-12));
  CHECK(std::abs(sensitivity(0.93, 0.83, 3.7, 19.0, 0.95) - 0.688) <= 0.001);
  CHECK(sensitivity(0.83, 0.93, 19.0, 3.7, 0.95) == sensitivity(0.93, 0.83, 3.7, 19.0, 0.95));
  CHECK(code_of([] { sensitivity(0.9, 0.8, 4.0, 4.0, 0.95); }) == ErrorCode::EqualPermittivities);
  CHECK(code_of([] { sensitivity(0.9, -0.8, 4.0, 5.0, 0.95); }) == ErrorCode::NonPositiveFrequency);

  // Backward solve for the 25 -> 30 % step.
  const double df = shift_for_sensitivity(1.7, 0.95, 3.2);
  CHECK(df == doctest::Approx(0.05168).epsilon(1e-12));
  CHECK(std::abs(df - 0.052) <= 0.001);
  CHECK(sensitivity(0.9, 0.9 - df, 15.8, 19.0, 0.95) == doctest::Approx(1.7));
}

TEST_CASE("sensitivity profile") {
  const auto p = sensitivity_profile({{0.93, 3.7}, {0.90, 5.8}, {0.83, 19.0}}, 0.95);
  REQUIRE(p.size() == 2);
  CHECK(p[0] == doctest::Approx(0.03 / (0.95 * 2.1) * 100.0));
  CHECK(p.back() == doctest::Approx(0.07 / (0.95 * 13.2) * 100.0));
  CHECK(code_of([] { sensitivity_profile({{0.9, 3.0}}, 0.95); }) == ErrorCode::TooFewPoints);
  CHECK(code_of([] { sensitivity_profile({{0.9, 3.0}, {0.8, 5.0}, {0.7, 4.0}}, 0.95); }) ==
        ErrorCode::NonMonotonePermittivity);
}

TEST_CASE("CSV inputs") {
  const auto pts = parse_calibration_points("delta_f_ghz,eps_r\n-0.03,3.7\n\n-0.13,19\n");
  REQUIRE(pts.size() == 2);
  CHECK(pts[1] == std::pair{-0.13, 19.0});
  CHECK(parse_soil_table("VWC_percent, eps_r\n0,3\n10,6\n").vwc_at(4.5) == doctest::Approx(5.0));
  CHECK(parse_readings("f_ghz,eps_r\n0.9,4\n").size() == 1);
  CHECK(code_of([] { parse_readings("freq,eps\n0.9,4\n"); }) == ErrorCode::MissingHeader);
  CHECK(code_of([] { parse_readings("f_ghz,eps_r\n0.9\n"); }) == ErrorCode::BadFieldCount);
  CHECK(code_of([] { parse_readings("f_ghz,eps_r\n0.9,nan\n"); }) == ErrorCode::BadFieldCount);
  CHECK(code_of([] { parse_soil_table("vwc_percent,eps_r\n0,5\n5,4\n"); }) == ErrorCode::InvalidTable);
}
