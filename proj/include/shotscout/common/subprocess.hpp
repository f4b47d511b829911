#pragma once
// Minimal fork/exec runner with captured stdout/stderr.

#include <string>
#include <vector>

namespace shotscout {

struct CommandResult {
    int exit_code = -1;
    std::string out;
    std::string err;

    bool ok() const { return exit_code == 0; }
};

// Runs argv[0] with the given arguments (no shell). Throws Error(IoError)
// only when the process cannot be spawned at all; a nonzero exit is reported
// through exit_code.
CommandResult run_command(const std::vector<std::string>& argv);

} // namespace shotscout
