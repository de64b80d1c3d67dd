#pragma once

#include <string>
#include <vector>

namespace evsched::cli {

// Entry point behind the `scheduler` binary; returns the process exit code.
// Errors print a diagnostic to stderr and return nonzero.
int run(const std::vector<std::string>& args);

int run(int argc, const char* const* argv);

}  // namespace evsched::cli
