#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shortspec {

// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitInversion = 3,
    kExitIo = 4,
};

// Runs the tool with `args` (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shortspec
