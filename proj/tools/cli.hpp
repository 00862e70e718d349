#pragma once

#include <iosfwd>

namespace sopml::cli {

enum ExitCode : int {
  kOk = 0,
  kRejected = 1,
  kInputError = 2,
  kSelfCheckFailed = 3,
};

// Entry point of the sopml command; argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sopml::cli
