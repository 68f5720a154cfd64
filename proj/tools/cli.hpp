#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sqfull::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Parses argv (argv[0] is the program name), runs the subcommand and
/// writes the artifact to `out` unless --out names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqfull::cli
