#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mielab {

// Entry point shared by the binary and the in-process CLI tests. Writes
// reports to `out`, diagnostics to `err`; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace mielab
