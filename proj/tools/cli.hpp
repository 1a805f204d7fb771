#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace smc::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kNoGain = 2 };

/// Runs one command line (without the program name). JSON results go to
/// `out`, machine-readable errors to `err`; input "-" reads from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace smc::cli
