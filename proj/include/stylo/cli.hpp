#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stylo {

/// Exit codes: 0 success, 1 usage or io, 2 parse error or error-class code,
/// 3 numeric degeneracy.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitDegenerate = 3 };

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace stylo
