#include "fdrsense/error.hpp"

namespace fdrsense {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGeometry: return "InvalidGeometry";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::EmptyNetwork: return "EmptyNetwork";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::DegenerateNetwork: return "DegenerateNetwork";
    case ErrorCode::NoResonanceFound: return "NoResonanceFound";
    case ErrorCode::NetlistSyntax: return "NetlistSyntax";
    case ErrorCode::MalformedOptionLine: return "MalformedOptionLine";
    case ErrorCode::NonMonotoneFrequency: return "NonMonotoneFrequency";
    case ErrorCode::BadFieldCount: return "BadFieldCount";
    case ErrorCode::UnsupportedPortCount: return "UnsupportedPortCount";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NoDipFound: return "NoDipFound";
    case ErrorCode::EdgeNotInSpan: return "EdgeNotInSpan";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::EqualPermittivities: return "EqualPermittivities";
    case ErrorCode::NonMonotonePermittivity: return "NonMonotonePermittivity";
    case ErrorCode::UnsupportedState: return "UnsupportedState";
    case ErrorCode::SensingDenied: return "SensingDenied";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace fdrsense
