#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dlcat {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIdentity = 2,
  kExitGated = 3,
};

// Runs the command line `args` (without the program name), writing the
// artifact to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, used to address cached tables by datum content.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace dlcat
