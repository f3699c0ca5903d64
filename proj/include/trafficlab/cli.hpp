#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trafficlab::cli {

enum ExitCode : int { ok = 0, invariant_failure = 1, input_error = 2, guard_breach = 3 };

/// Runs the command line `args` (args[0] is the program name). Failures print
/// one line to `err`: "trafficlab: error reason=<token> exit=<code>: <detail>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace trafficlab::cli
