#pragma once

#include <iosfwd>

namespace kitten::cli {

/// Runs the command line; returns the process exit code
/// (0 success, 1 usage or configuration error, 2 numerical failure).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kitten::cli
