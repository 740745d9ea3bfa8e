#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hwalg::cli {

/// Exit codes consumed by scripts and CI.
enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// diagnostics to `err`. The default output format comes from HWALG_FORMAT
/// when set, otherwise text.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hwalg::cli
