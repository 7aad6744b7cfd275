#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypara {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;   // usage or validation error
inline constexpr int kExitFailed = 2;    // diverged run or failed audit

// Subcommands: run, audit-kernel, oracle-check, peaks. args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypara
