#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dlfv/error.hpp"

namespace dlfv::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,  // also out-of-memory
  kUsage = 2,
  kLockingSetTooSmall = 3,
  kMessageTooLarge = 4,
  kChaffSpaceExhausted = 5,
  kNotEnoughMatches = 6,
  kDecodeFailed = 7,
  kIdentityRejected = 8,
};

int exit_code_for(Errc code);

// args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlfv::cli
