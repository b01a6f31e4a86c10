#pragma once

#include <iosfwd>

namespace dalnet::cli {

// Runs the command line; returns the process exit code (0 ok, 1 operation
// error, 2 usage error).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dalnet::cli
