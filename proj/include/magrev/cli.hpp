#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace magrev::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInfeasible = 2,
    kNumerical = 3,
};

/// Flat `key = value` lines; blank lines and `#` comments are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Runs `magrev <args...>` (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace magrev::cli
