#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cmapf {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitNotIndependent = 1,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitInfeasibleViaReduction = 4,
  kExitProvenInfeasible = 5,
  kExitInvalidPlan = 6,
  kExitBudget = 7,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmapf
