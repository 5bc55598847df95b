#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bonus::cli {

/// Runs the bonus command line on the given arguments (excluding argv[0]),
/// writing results to `out` and diagnostics to `err`.
///
/// Exit codes: 0 success, 2 usage/validation error, 3 numeric failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bonus::cli
