#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctvm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kDataError = 2,
};

/// Entry point of the `ctvm` tool; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "100" or an inclusive sweep "a:b:step".
std::vector<double> parse_budgets(const std::string& spec);

}  // namespace ctvm::cli
