#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace picod::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,          // verification or certificate check failed
  kUsage = 2,
  kParse = 3,
  kInfeasible = 4,
  kBudgetExhausted = 5,
};

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace picod::cli
