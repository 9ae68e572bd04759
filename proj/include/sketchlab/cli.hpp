#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sketchlab {

/// SKETCHLAB_BUDGET when set, otherwise 1000 chase steps.
std::size_t default_budget();

/// Runs one command line (without the program name). JSON goes to `out`,
/// diagnostics to `err`. Exit codes: 0 success or verified, 1 refuted or
/// invalid, 2 unknown or budget exhausted, 3 usage, parse or resolution
/// error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sketchlab
