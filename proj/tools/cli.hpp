#ifndef CHAINLAB_TOOLS_CLI_HPP
#define CHAINLAB_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace chainlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 2;

/// Runs one invocation. `args` excludes the program name.
/// Exit codes: 0 ran, 1 usage or configuration error, 2 internal invariant
/// violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace chainlab::cli

#endif  // CHAINLAB_TOOLS_CLI_HPP
