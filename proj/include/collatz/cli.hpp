#ifndef COLLATZ_CLI_HPP
#define COLLATZ_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace collatz::cli {

// Dispatches one command line (without the program name). Exit codes:
// 0 success, 1 usage or parse error, 2 anomaly found (nontrivial cycle,
// inconclusive search, or a verification that did not reach 1 everywhere).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace collatz::cli

#endif
