#pragma once

#include <json.hpp>

#include "fdrsense/calibration.hpp"
#include "fdrsense/circuit.hpp"
#include "fdrsense/microstrip.hpp"
#include "fdrsense/modes.hpp"
#include "fdrsense/sweep.hpp"

// JSON forms of the result types. Key order is fixed so output is
// byte-identical for identical inputs.
namespace fdrsense {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

void to_json(Json& j, const Substrate& v);
void from_json(const Json& j, Substrate& v);
void to_json(Json& j, const MicrostripLine& v);
void from_json(const Json& j, MicrostripLine& v);
void to_json(Json& j, const LineParams& v);
void from_json(const Json& j, LineParams& v);
void to_json(Json& j, const ResonanceReport& v);
void from_json(const Json& j, ResonanceReport& v);
void to_json(Json& j, const Dip& v);
void from_json(const Json& j, Dip& v);
void to_json(Json& j, const DipReport& v);
void from_json(const Json& j, DipReport& v);
void to_json(Json& j, const RepeatabilityEntry& v);
void from_json(const Json& j, RepeatabilityEntry& v);
void to_json(Json& j, const CalibrationModel& v);
void from_json(const Json& j, CalibrationModel& v);
void to_json(Json& j, const Estimate& v);
void from_json(const Json& j, Estimate& v);
void to_json(Json& j, const Band& v);
void from_json(const Json& j, Band& v);
void to_json(Json& j, const ModeState& v);
void from_json(const Json& j, ModeState& v);
void to_json(Json& j, const ClassifiedDip& v);
void from_json(const Json& j, ClassifiedDip& v);

/// Model file: the calibration model wrapped with a schema version.
/// Throws InvalidModel on missing fields or a version mismatch.
CalibrationModel model_from_json_text(std::string_view text);
std::string model_to_json_text(const CalibrationModel& model);

/// Two-space indented, trailing newline.
std::string dump(const Json& j);

}  // namespace fdrsense
