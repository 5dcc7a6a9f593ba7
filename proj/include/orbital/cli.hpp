#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbital {

/// Run the command-line interface on `args` (without the program name).
/// Reads from `in` when no input file is given; prints results to `out` and
/// diagnostics to `err`.  Returns the process exit code:
///   0  solved to optimality / validation clean
///   2  infeasible instance or labeling violations
///   3  variant unsupported or search-space refusal
///   64 usage errors and unreadable input
int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err);

}  // namespace orbital
