#include <doctest.h>

#include <numeric>

#include "properties.hpp"

using namespace fdrsense::testing;

namespace {

constexpr std::uint64_t kSeed = 20240611;

void require_ok(const PropertyResult& r) {
  INFO(r.name << ": " << r.failures << "/" << r.cases << " failed; first: " << r.first_failure);
  CHECK(r.ok());
}

}  // namespace

TEST_CASE("gate families run at least 1000 cases") {
  const auto results = run_gate_properties(kSeed);
  REQUIRE(results.size() == 6);
  int total = 0;
  for (const auto& r : results) {
    require_ok(r);
    total += r.cases;
  }
  CHECK(total >= 1000);
}

TEST_CASE("the gate is seed independent") {
  for (const auto& r : run_gate_properties(kSeed ^ 0x9e3779b97f4a7c15ULL)) require_ok(r);
}

TEST_CASE("circuit algebra") {
  require_ok(check_series_associativity(kSeed + 10, 200));
  require_ok(check_series_lc_closed_form(kSeed + 11, 100));
}

TEST_CASE("dip detection geometry") {
  require_ok(check_translation_equivariance(kSeed + 20, 50));
  require_ok(check_parabola_within_cell(kSeed + 21, 100));
}

TEST_CASE("calibration inverts exactly") { require_ok(check_calibration_round_trip(kSeed + 30, 1000)); }
