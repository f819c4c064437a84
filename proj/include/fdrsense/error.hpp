#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fdrsense {

enum class ErrorCode {
  InvalidGeometry,
  InvalidValue,
  EmptyNetwork,
  NonPositiveFrequency,
  DegenerateNetwork,
  NoResonanceFound,
  NetlistSyntax,
  MalformedOptionLine,
  NonMonotoneFrequency,
  BadFieldCount,
  UnsupportedPortCount,
  MissingHeader,
  TooFewPoints,
  NoDipFound,
  EdgeNotInSpan,
  DegenerateFit,
  InvalidModel,
  InvalidTable,
  EqualPermittivities,
  NonMonotonePermittivity,
  UnsupportedState,
  SensingDenied,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every domain failure in the library is reported through this type. The
// message is ready to show to a user; code() is for programmatic dispatch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fdrsense
