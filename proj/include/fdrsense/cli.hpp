#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fdrsense::cli {

/// Runs one command line (without the program name). Results go to `out`
/// only when the command succeeds; diagnostics go to `err`.
///
/// Exit codes: 0 success, 1 domain or I/O error, 2 usage error.
/// The FDR_SENSE_CONFIG environment variable names a default config file;
/// explicit flags take precedence over it.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdrsense::cli
