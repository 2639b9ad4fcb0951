#pragma once

#include <string>
#include <vector>

namespace windspc::cli {

// Parses and executes one command line (without the program name). Returns
// the process exit status: 0 ok, 2 input error, 3 modeling error, 4 config
// error.
int run(const std::vector<std::string>& args);

}  // namespace windspc::cli
