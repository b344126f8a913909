#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace soclelab::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kPass = 0,
    kNegative = 1,   // a legitimate mathematical "no", e.g. an inequality failing over a small field
    kInput = 2,      // malformed input, unmet precondition or out-of-scope request
    kBudget = 3,     // an enumeration cap was reached
    kViolation = 4,  // a proved statement failed on an instance: a bug
};

/// Runs one command. `args` excludes the program name. Reports go to `out` as one JSON
/// line per report (or a rendered table with --pretty); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace soclelab::cli
