#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace topodyn {

/// Runs the command-line tool on the given arguments (program name
/// excluded), writing regular output to out and diagnostics to err.
/// Returns the process exit code: 0 success, 1 nothing found or a failed
/// claim, 2 malformed input.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace topodyn
