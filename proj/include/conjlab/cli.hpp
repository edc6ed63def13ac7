#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conjlab {

// Dispatches the conjlab command line. Deterministic: identical args and
// inputs produce byte-identical output. Returns the process exit code
// (0 success, 1 analysis-negative, 2 usage/validation error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conjlab
