#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dilatron::cli {

enum ExitCode : int { kPass = 0, kNumericalFailure = 2, kInputError = 3 };

/// Runs one `dilatron` invocation. `args` excludes the program name. The
/// report goes to `out` as canonical JSON, diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dilatron::cli
