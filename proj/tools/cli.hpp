#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace spbvp::cli {

// Exit statuses. Nothing else is ever returned.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kResonance = 3,
  kBudget = 4,
  kBoundViolation = 5,
  kDegenerateFit = 6,
};

// Runs one command. args excludes the program name. Payload goes to out
// (or to --out), a single-line diagnostic to err on failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spbvp::cli
