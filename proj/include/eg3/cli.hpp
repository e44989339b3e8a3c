#ifndef EG3_CLI_HPP
#define EG3_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "eg3/error.hpp"

namespace eg3::cli {

/// Process exit codes.
enum exit_code : int {
  exit_ok = 0,
  exit_invalid = 2,
  exit_malformed_file = 3,
  exit_message_range = 4,
};

int exit_code_for(errc code);

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eg3::cli

#endif  // EG3_CLI_HPP
