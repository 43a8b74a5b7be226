#ifndef FAIRDIV_CLI_HPP
#define FAIRDIV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitProtocol = 3 };

// Entry point of the `fairdiv` tool; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairdiv

#endif  // FAIRDIV_CLI_HPP
