#pragma once

#include <string>
#include <vector>

#include "rcurves/prohibition.hpp"

namespace rcurves::cli {

// What a finished invocation hands back to main(): the process exit code and
// the text destined for the two standard streams.
struct RunResult {
    int code = 0;
    std::string out;
    std::string err;
};

// Exit policy shared by every scheme-checking path: 0 when no applicable rule
// failed, 1 when one did, 3 when nothing was applicable at all and the caller
// asked for --strict. Usage and parse problems are code 2 and never reach
// this function.
int exit_code_for(const Report& report, bool strict);

// Run one command line (without the program name). Never throws: every
// failure is folded into the exit code and the err text.
RunResult run(const std::vector<std::string>& args);

}  // namespace rcurves::cli
