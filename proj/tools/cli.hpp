#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sicprob::cli {

/// Exit codes: 0 success, 1 a verified-failure result, 2 usage or input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args excludes the program name). JSON goes to
/// `out` unless --out redirects it; diagnostics go to `err` as one line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sicprob::cli
