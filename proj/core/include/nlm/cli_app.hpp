#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlm::cli {

/// Exit codes: 0 success, 1 internal/verification failure, 2 assumption
/// gate (the gate is named in the output), 64 usage/parse error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitAssumptionGate = 2;
inline constexpr int kExitUsage = 64;

/// Runs the `nl` command line: eval | condition | dilation | extent |
/// coarsen | constrict | verify. Testable entry point; the binary wraps it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlm::cli
