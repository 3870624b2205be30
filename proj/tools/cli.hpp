#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace invlim::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { kOk = 0, kVerdictFalse = 1, kInputError = 2 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// FNV-1a 64 of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

}  // namespace invlim::cli
