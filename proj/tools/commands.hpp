#pragma once

#include <iosfwd>

namespace mcycle::cli {

enum Exit { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// Full command line, argv[0] included. Output that is not redirected with
// --output goes to out; diagnostics go to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mcycle::cli
