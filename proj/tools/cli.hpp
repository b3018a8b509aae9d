#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace loewy::cli {

enum ExitCode { ok = 0, domain_error = 1, undetermined = 2 };

// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loewy::cli
