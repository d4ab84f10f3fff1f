#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nft::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< tolerance failure or numerical error
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitDuplicate = 3;
inline constexpr int kExitWrongCount = 4;

/// Runs `nft-toolkit <args...>`; `args` excludes the program name. Data
/// written to "-" goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nft::cli
