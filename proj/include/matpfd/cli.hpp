#pragma once

#include <istream>
#include <string>
#include <vector>

namespace matpfd {

struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs one subcommand. `args` excludes the program name; a matrix path of
/// "-" reads from `in`. Exit codes: 0 success, 1 domain error or failed
/// verification, 2 usage or parse error.
CommandResult run_command(const std::vector<std::string>& args, std::istream& in);

}  // namespace matpfd
