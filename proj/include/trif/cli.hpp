#pragma once

// Command-line surface. run_cli takes argv-style arguments (program name
// excluded, natural order) and returns the process exit code:
//   0  success / property true
//   1  property false / instance infeasible
//   2  usage or I/O error
//   3  budget exhausted without a certificate

#include <iosfwd>
#include <string>
#include <vector>

namespace trif {

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace trif
