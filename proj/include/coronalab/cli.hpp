#pragma once

#include <string>
#include <vector>

namespace coronalab::cli {

/// Exit codes: 0 success, 1 usage or input error, 2 a numerical routine did not converge
/// (the report is still written).
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args[0] is the program name

}  // namespace coronalab::cli
