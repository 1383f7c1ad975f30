#ifndef UMBRAL_CLI_HPP
#define UMBRAL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace umbral::cli
{

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    usage_error = 2,
    spec_error = 3,
};

// Runs the command line; args[0] is the program name. Data goes to out, diagnostics to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace umbral::cli

#endif
