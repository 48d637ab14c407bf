#ifndef JACPAIR_CLI_HPP
#define JACPAIR_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace jacpair {

/// Command-line driver. args excludes the program name. Returns the exit
/// code: 0 success, 1 domain errors (no witness, unrealizable, degenerate,
/// verification failures), 2 usage and parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace jacpair

#endif
