#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace propest::cli {

/// Runs the command line given in args (args[0] is the program name).
/// Returns 0 on success, 2 on a usage error and 1 on a runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads newline-delimited numbers or a one-column CSV with an optional header.
std::vector<double> read_column(const std::string& path);

}  // namespace propest::cli
