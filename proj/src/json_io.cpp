#include "json_io.hpp"

#include <cmath>
#include <limits>

#include "fdrsense/error.hpp"

namespace fdrsense {
namespace {

// NaN has no JSON form; it travels as null.
Json number_or_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string_view method_name(ResonanceMethod m) {
  return m == ResonanceMethod::ReactanceZero ? "reactance" : "dip";
}

template <typename E, std::size_t N>
E enum_from(const Json& j, const std::pair<E, std::string_view> (&names)[N]) {
  const auto s = j.get<std::string>();
  for (const auto& [value, name] : names) {
    if (name == s) return value;
  }
  throw Json::other_error::create(501, "unknown enum name '" + s + "'", &j);
}

constexpr std::pair<Service, std::string_view> kServices[] = {
    {Service::Sensing, "sensing"}, {Service::Communication, "communication"}};
constexpr std::pair<DipRole, std::string_view> kRoles[] = {
    {DipRole::Sensing, "sensing"},
    {DipRole::Communication, "communication"},
    {DipRole::Unassigned, "unassigned"}};
constexpr std::pair<ResonanceMethod, std::string_view> kMethods[] = {
    {ResonanceMethod::ReactanceZero, "reactance"}, {ResonanceMethod::ReflectionDip, "dip"}};

}  // namespace

void to_json(Json& j, const Substrate& v) {
  j = Json{{"eps_r", v.eps_r}, {"tan_delta", v.tan_delta}, {"height_mm", v.height_mm}};
}
void from_json(const Json& j, Substrate& v) {
  j.at("eps_r").get_to(v.eps_r);
  j.at("tan_delta").get_to(v.tan_delta);
  j.at("height_mm").get_to(v.height_mm);
}

void to_json(Json& j, const MicrostripLine& v) {
  j = Json{{"substrate", v.substrate}, {"width_mm", v.width_mm}, {"length_mm", v.length_mm}};
}
void from_json(const Json& j, MicrostripLine& v) {
  j.at("substrate").get_to(v.substrate);
  j.at("width_mm").get_to(v.width_mm);
  j.at("length_mm").get_to(v.length_mm);
}

void to_json(Json& j, const LineParams& v) {
  j = Json{{"eps_eff", v.eps_eff}, {"z0_ohm", v.z0_ohm}, {"inductance_nH", v.inductance_nH}};
}
void from_json(const Json& j, LineParams& v) {
  j.at("eps_eff").get_to(v.eps_eff);
  j.at("z0_ohm").get_to(v.z0_ohm);
  j.at("inductance_nH").get_to(v.inductance_nH);
}

void to_json(Json& j, const ResonanceReport& v) {
  j = Json{{"method", method_name(v.method)},
           {"reference_ohm", v.reference_ohm},
           {"frequencies_GHz", v.frequencies_GHz}};
}
void from_json(const Json& j, ResonanceReport& v) {
  v.method = enum_from(j.at("method"), kMethods);
  j.at("reference_ohm").get_to(v.reference_ohm);
  j.at("frequencies_GHz").get_to(v.frequencies_GHz);
}

void to_json(Json& j, const Dip& v) {
  j = Json{{"f0_GHz", v.f0_GHz},
           {"depth_dB", v.depth_dB},
           {"band_lo_GHz", v.band_lo_GHz ? Json(*v.band_lo_GHz) : Json(nullptr)},
           {"band_hi_GHz", v.band_hi_GHz ? Json(*v.band_hi_GHz) : Json(nullptr)}};
}
void from_json(const Json& j, Dip& v) {
  j.at("f0_GHz").get_to(v.f0_GHz);
  j.at("depth_dB").get_to(v.depth_dB);
  const auto& lo = j.at("band_lo_GHz");
  const auto& hi = j.at("band_hi_GHz");
  v.band_lo_GHz = lo.is_null() ? std::nullopt : std::optional<double>(lo.get<double>());
  v.band_hi_GHz = hi.is_null() ? std::nullopt : std::optional<double>(hi.get<double>());
}

void to_json(Json& j, const DipReport& v) {
  j = Json{{"threshold_dB", v.threshold_dB}, {"dips", v.dips}};
}
void from_json(const Json& j, DipReport& v) {
  j.at("threshold_dB").get_to(v.threshold_dB);
  j.at("dips").get_to(v.dips);
}

void to_json(Json& j, const RepeatabilityEntry& v) {
  j = Json{{"f_reference_GHz", v.f_reference_GHz},
           {"f_repeat_GHz", number_or_null(v.f_repeat_GHz)},
           {"difference_MHz", number_or_null(v.difference_MHz)},
           {"exceeds", v.exceeds}};
}
void from_json(const Json& j, RepeatabilityEntry& v) {
  j.at("f_reference_GHz").get_to(v.f_reference_GHz);
  v.f_repeat_GHz = number_from(j.at("f_repeat_GHz"));
  v.difference_MHz = number_from(j.at("difference_MHz"));
  j.at("exceeds").get_to(v.exceeds);
}

void to_json(Json& j, const CalibrationModel& v) {
  j = Json{{"f_u_GHz", v.f_u_GHz},
           {"slope", v.slope},
           {"intercept", v.intercept},
           {"fit_residual", v.fit_residual}};
}
void from_json(const Json& j, CalibrationModel& v) {
  j.at("f_u_GHz").get_to(v.f_u_GHz);
  j.at("slope").get_to(v.slope);
  j.at("intercept").get_to(v.intercept);
  j.at("fit_residual").get_to(v.fit_residual);
}

void to_json(Json& j, const Estimate& v) {
  j = Json{{"delta_f_GHz", v.delta_f_GHz},
           {"eps_r_real", v.eps_r_real},
           {"vwc_percent", v.vwc_percent},
           {"extrapolated", v.extrapolated}};
}
void from_json(const Json& j, Estimate& v) {
  j.at("delta_f_GHz").get_to(v.delta_f_GHz);
  j.at("eps_r_real").get_to(v.eps_r_real);
  j.at("vwc_percent").get_to(v.vwc_percent);
  j.at("extrapolated").get_to(v.extrapolated);
}

void to_json(Json& j, const Band& v) { j = Json{{"lo_GHz", v.lo_GHz}, {"hi_GHz", v.hi_GHz}}; }
void from_json(const Json& j, Band& v) {
  j.at("lo_GHz").get_to(v.lo_GHz);
  j.at("hi_GHz").get_to(v.hi_GHz);
}

void to_json(Json& j, const ModeState& v) {
  Json services = Json::array();
  for (Service s : v.services) services.push_back(to_string(s));
  j = Json{{"state", v.state_code()},
           {"mode", v.mode_index},
           {"bands", v.bands},
           {"services", services},
           {"application", v.application}};
}
void from_json(const Json& j, ModeState& v) {
  v = resolve(j.at("state").get<std::string>());
  j.at("mode").get_to(v.mode_index);
  j.at("bands").get_to(v.bands);
  v.services.clear();
  for (const auto& s : j.at("services")) v.services.push_back(enum_from(s, kServices));
  j.at("application").get_to(v.application);
}

void to_json(Json& j, const ClassifiedDip& v) {
  j = Json{{"f0_GHz", v.f0_GHz}, {"role", to_string(v.role)}};
}
void from_json(const Json& j, ClassifiedDip& v) {
  j.at("f0_GHz").get_to(v.f0_GHz);
  v.role = enum_from(j.at("role"), kRoles);
}

CalibrationModel model_from_json_text(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw Error(ErrorCode::InvalidModel,
                  "unsupported schema_version " + std::to_string(version));
    }
    CalibrationModel m = j.at("model").get<CalibrationModel>();
    m.validate();
    return m;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidModel, std::string("malformed model file: ") + e.what());
  }
}

std::string model_to_json_text(const CalibrationModel& model) {
  return dump(Json{{"schema_version", kSchemaVersion}, {"model", model}});
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace fdrsense
