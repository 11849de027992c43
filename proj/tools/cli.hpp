#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hermikit::cli {

enum ExitCode { ok = 0, validation_failure = 1, usage_error = 2 };

// Runs one subcommand; args exclude the program name. The JSON report goes to
// `out` (or to --output), diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hermikit::cli
