#pragma once

// The ihat command line, callable in-process.
//
// Exit codes: 0 ok, 2 convergence or pole trouble, 3 bad input (usage, JSON,
// spec, strip, domain), 4 statistical validation failed (unvalidated density
// or a failed verification report).

#include <ostream>
#include <string>
#include <vector>

namespace ihat {

// args excludes the program name. Output goes to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ihat
