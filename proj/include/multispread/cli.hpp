#pragma once

#include <ostream>

namespace mspread::cli {

/// Exit codes of `ms`.
enum Exit : int {
  kOk = 0,
  kInfeasible = 1,
  kUnknown = 2,
  kExhausted = 3,
  kBudget = 4,
  kUsage = 64,
  kDataError = 65,
  kInternal = 70,
};

/// Runs one `ms` command line; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mspread::cli
